import random

import pytest

from paramode import linalg
from paramode.chevalley import build_rep, principal_nilpotents
from paramode.gauge import (PlaneError, diff_identity, exp_root, gauge_apply,
                            log_derivative, matrices_equal, reduce_to_complement)
from paramode.jets import DiffRat, diff_equals
from paramode.scalars import Scalar
from paramode.verify import random_plane_matrix

S0 = Scalar.zero()
S1 = Scalar.one()
R0 = DiffRat.zero()
R1 = DiffRat.one()


def E(n, i, j, c=1):
    m = [[S0] * n for _ in range(n)]
    m[i - 1][j - 1] = Scalar(c)
    return m


def lift(m):
    return [[DiffRat.from_scalar(e) for e in row] for row in m]


def test_exp_root_examples():
    s = DiffRat.jet(1)  # any differential parameter
    u = exp_root(s, E(2, 1, 2))
    assert matrices_equal(u, [[R1, s], [R0, R1]])

    x = linalg.mat_add(E(4, 1, 3), E(4, 2, 4))
    rng = random.Random(2)
    for _ in range(5):
        rho = DiffRat.const(rng.randint(-3, 3)) * DiffRat.jet(1, rng.randint(0, 1))
        prod = linalg.mat_mul(exp_root(rho, x), exp_root(-rho, x))
        assert matrices_equal(prod, diff_identity(4))

    assert matrices_equal(exp_root(R0, x), diff_identity(4))


def test_exp_root_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_root(R1, E(2, 1, 1))


def test_log_derivative_examples():
    assert matrices_equal(log_derivative(diff_identity(3)), [[R0] * 3 for _ in range(3)])

    u = diff_identity(2)
    u[0][1] = DiffRat.jet(1)
    got = log_derivative(u)
    assert matrices_equal(got, [[R0, DiffRat.jet(1, 1)], [R0, R0]])

    const = lift(linalg.mat_add(E(2, 1, 1, 2), linalg.mat_add(E(2, 2, 2, 3), E(2, 1, 2, 5))))
    assert matrices_equal(log_derivative(const), [[R0, R0], [R0, R0]])


def test_log_derivative_of_root_element_lands_in_root_space():
    rep = build_rep("C", 2)
    beta = rep.rs.root((1, 1))
    x = rep.root_vector(-beta)
    rho = DiffRat.jet(2)
    got = log_derivative(exp_root(rho, x))
    want = [[DiffRat.jet(2, 1) * DiffRat.from_scalar(x[i][j]) for j in range(4)]
            for i in range(4)]
    assert matrices_equal(got, want)


def test_gauge_apply_examples():
    a = lift(E(3, 1, 2))
    assert matrices_equal(gauge_apply(diff_identity(3), a), a)

    const_u = lift(linalg.mat_add(E(2, 1, 1, 2), E(2, 2, 2, 1)))
    zero = [[R0, R0], [R0, R0]]
    assert matrices_equal(gauge_apply(const_u, zero), zero)


def test_gauge_composition_law():
    rep = build_rep("A", 2)
    rng = random.Random(23)
    xs = [rep.root_vector(-r) for r in rep.rs.positive_roots]
    for _ in range(25):
        u1 = exp_root(DiffRat.jet(1) * DiffRat.const(rng.randint(-2, 2)),
                      xs[rng.randrange(3)])
        u2 = exp_root(DiffRat.jet(2, 1) * DiffRat.const(rng.randint(-2, 2)),
                      xs[rng.randrange(3)])
        a = [[DiffRat.const(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        lhs = gauge_apply(u2, gauge_apply(u1, a))
        rhs = gauge_apply(linalg.mat_mul(u2, u1), a)
        assert matrices_equal(lhs, rhs)


def test_log_derivative_cocycle():
    rep = build_rep("A", 2)
    rng = random.Random(29)
    xs = [rep.root_vector(-r) for r in rep.rs.positive_roots]
    for _ in range(10):
        u1 = exp_root(DiffRat.jet(1) * DiffRat.const(rng.randint(1, 3)),
                      xs[rng.randrange(3)])
        u2 = exp_root(DiffRat.jet(2) * DiffRat.const(rng.randint(1, 3)),
                      xs[rng.randrange(3)])
        lhs = log_derivative(linalg.mat_mul(u1, u2))
        u1_inv = linalg.inverse(u1, R0, R1)
        ad_term = linalg.mat_mul(linalg.mat_mul(u1, log_derivative(u2)), u1_inv)
        rhs = linalg.mat_add(log_derivative(u1), ad_term)
        assert matrices_equal(lhs, rhs)


def _a0_plus(rep):
    a0p, _ = principal_nilpotents(rep)
    return lift(a0p)


def test_reduce_already_in_plane():
    rep = build_rep("C", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    a = _a0_plus(rep)
    x = rep.root_vector(-gammas[0])
    for i in range(rep.n):
        for j in range(rep.n):
            if x[i][j]:
                a[i][j] = a[i][j] + DiffRat.jet(1) * DiffRat.from_scalar(x[i][j])
    u, b = reduce_to_complement(a, rep, gammas, "flipped")
    assert u.factors == []
    assert matrices_equal(u.matrix, diff_identity(rep.n))
    assert matrices_equal(b, a)


def test_reduce_a2_cartan_perturbation():
    rep = build_rep("A", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    a = _a0_plus(rep)
    h = DiffRat.jet(1)  # random differential coefficient on H_1
    h1 = rep.cartan[0]
    for i in range(3):
        for j in range(3):
            if h1[i][j]:
                a[i][j] = a[i][j] + h * DiffRat.from_scalar(h1[i][j])
    u, b = reduce_to_complement(a, rep, gammas, "flipped")
    # oracle: recompute the gauge action from scratch
    assert matrices_equal(gauge_apply(u.matrix, a), b)
    # support only on X_{-a2} and X_{-a1-a2} outside A_0^+
    allowed = set()
    for g in gammas:
        x = rep.root_vector(-g)
        allowed |= {(i, j) for i in range(3) for j in range(3) if x[i][j]}
    a0 = _a0_plus(rep)
    delta = linalg.mat_sub(b, a0)
    for i in range(3):
        for j in range(3):
            if delta[i][j]:
                assert (i, j) in allowed


def test_reduce_random_c2():
    rep = build_rep("C", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    rng = random.Random(31)
    for _ in range(8):
        a = random_plane_matrix(rep, rng)
        u, b = reduce_to_complement(a, rep, gammas, "flipped")
        assert matrices_equal(gauge_apply(u.matrix, a), b)


def test_reduce_mid_rank_families():
    rng = random.Random(101)
    for kind, rank in [("C", 3), ("B", 3), ("D", 4)]:
        rep = build_rep(kind, rank)
        gammas = rep.rs.closed_form_complementary_roots()
        a = random_plane_matrix(rep, rng)
        u, b = reduce_to_complement(a, rep, gammas, "flipped")
        assert matrices_equal(gauge_apply(u, a), b), (kind, rank)


def test_gauge_element_is_unipotent():
    rep = build_rep("C", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    rng = random.Random(43)
    a = random_plane_matrix(rep, rng)
    u, _ = reduce_to_complement(a, rep, gammas, "flipped")
    nilpart = linalg.mat_sub(u.matrix, diff_identity(rep.n))
    power = nilpart
    for _ in range(rep.n - 1):
        power = linalg.mat_mul(power, nilpart)
    assert all(not e for row in power for e in row)


def test_gauge_element_factor_product():
    rep = build_rep("B", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    rng = random.Random(37)
    a = random_plane_matrix(rep, rng)
    u, b = reduce_to_complement(a, rep, gammas, "flipped")
    prod = diff_identity(rep.n)
    for mat in u.factor_matrices(rep):
        prod = linalg.mat_mul(prod, mat)
    assert matrices_equal(prod, u.matrix)
    # the recorded roots are negative in flipped polarity
    assert all(beta.height < 0 for beta, _ in u.factors)


def test_elimination_coordinate_is_affine_with_unit_slope():
    from paramode.gauge import _PlaneCoordinates

    rep = build_rep("C", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    plane = _PlaneCoordinates(rep, gammas, "flipped")
    rng = random.Random(41)
    a = random_plane_matrix(rep, rng)
    a0 = _a0_plus(rep)
    coords0 = plane.coordinates(linalg.mat_sub(a, a0))
    k = next(i for i, c in enumerate(coords0) if i < plane.r and c)
    beta = -plane.sources[k]
    x = rep.root_vector(beta)

    def coord_at(rho):
        u = exp_root(DiffRat.const(rho), x)
        return plane.coordinates(linalg.mat_sub(gauge_apply(u, a), a0))[k]

    f0, f1, f2 = coord_at(0), coord_at(1), coord_at(2)
    slope = f1 - f0
    assert diff_equals(slope, DiffRat.one())  # unit slope
    assert diff_equals(f2, f0 + (slope + slope))  # affine interpolation at rho = 2


def test_reduce_standard_polarity():
    # the mirrored reduction: A in A_0^- + b^+ lands on the positive
    # complementary root spaces
    rep = build_rep("A", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    _, a0m = principal_nilpotents(rep)
    a = lift(a0m)
    h1 = rep.cartan[0]
    for i in range(3):
        for j in range(3):
            if h1[i][j]:
                a[i][j] = a[i][j] + DiffRat.jet(2) * DiffRat.from_scalar(h1[i][j])
    u, b = reduce_to_complement(a, rep, gammas, "standard")
    assert matrices_equal(gauge_apply(u.matrix, a), b)
    allowed = set()
    for g in gammas:
        x = rep.root_vector(g)
        allowed |= {(i, j) for i in range(3) for j in range(3) if x[i][j]}
    delta = linalg.mat_sub(b, lift(a0m))
    for i in range(3):
        for j in range(3):
            if delta[i][j]:
                assert (i, j) in allowed
    assert all(beta.height > 0 for beta, _ in u.factors)


def test_reduce_rejects_matrix_outside_plane():
    rep = build_rep("A", 2)
    gammas = rep.rs.closed_form_complementary_roots()
    a = _a0_plus(rep)
    a[0][2] = DiffRat.jet(1)  # positive non-simple root direction: not in A_0^+ + b^-
    with pytest.raises(PlaneError):
        reduce_to_complement(a, rep, gammas, "flipped")


def test_reduce_rejects_bad_complement():
    rep = build_rep("A", 2)
    bad = [rep.rs.root((1, 0)), rep.rs.root((0, 1))]
    with pytest.raises(PlaneError):
        reduce_to_complement(_a0_plus(rep), rep, bad, "flipped")
