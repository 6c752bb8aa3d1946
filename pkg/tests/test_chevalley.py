import random

import pytest

from paramode import linalg
from paramode.chevalley import (bracket, build_rep, centralizer_basis,
                                complement_rank_test, find_complementary_roots,
                                matrix_from_json, matrix_in_span, matrix_to_json,
                                normalize_family, parameter_matrix,
                                principal_nilpotents, verify_bplus_decomposition,
                                w_basis)
from paramode.jets import DiffRat, diff_equals
from paramode.scalars import SQRT2, Scalar

S0 = Scalar.zero()
S1 = Scalar.one()


def E(n, i, j, c=1):
    m = [[S0] * n for _ in range(n)]
    m[i - 1][j - 1] = Scalar(c)
    return m


def madd(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = linalg.mat_add(out, m)
    return out


def test_a2_shape():
    rep = build_rep("A", 2)
    assert rep.n == 3
    assert rep.dim == 8


def test_g2_root_vector_table():
    rep = build_rep("G2", 2)
    assert rep.n == 7
    assert rep.dim == 14
    x_a2 = rep.root_vector(rep.rs.root((0, 1)))
    assert linalg.mat_equal(x_a2, madd(E(7, 3, 4), E(7, 7, 6, -1)))
    x_a1 = rep.root_vector(rep.rs.root((1, 0)))
    assert x_a1[0][2] == SQRT2 and x_a1[5][0] == -SQRT2


def test_b2_short_root_vector_absolute_positions():
    rep = build_rep("B", 2)
    assert rep.n == 5
    # eps_2 = a2; block labels (1, 2, 0, -2, -1) map to absolute 1..5
    x = rep.root_vector(rep.rs.root((0, 1)))
    assert linalg.mat_equal(x, madd(E(5, 2, 3, 2), E(5, 3, 4)))


def test_bracket_examples():
    e12 = E(2, 1, 2)
    e21 = E(2, 2, 1)
    assert linalg.mat_equal(bracket(e12, e21), madd(E(2, 1, 1), E(2, 2, 2, -1)))

    rep = build_rep("C", 3)
    h0 = rep.h0
    for root in rep.roots():
        x = rep.root_vector(root)
        want = linalg.mat_scale(Scalar(root.height), x)
        assert linalg.mat_equal(bracket(h0, x), want)

    x = rep.root_vector(rep.rs.root((1, 0, 0)))
    assert all(not e for row in bracket(x, x) for e in row)


def test_g2_grading_element():
    rep = build_rep("G2", 2)
    diag = [rep.h0[i][i] for i in range(7)]
    assert diag == [Scalar(v) for v in (0, 3, -1, -2, -3, 1, 2)]


def test_principal_nilpotents():
    rep = build_rep("A", 2)
    a0p, a0m = principal_nilpotents(rep)
    assert linalg.mat_equal(a0p, madd(E(3, 1, 2), E(3, 2, 3)))
    assert linalg.mat_equal(a0m, madd(E(3, 2, 1), E(3, 3, 2)))

    g2p, _ = principal_nilpotents(build_rep("G2", 2))
    assert any(e == SQRT2 for row in g2p for e in row)

    # [A0+, A0-] lies in the Cartan span for every representation
    for kind, rank in [("A", 3), ("B", 2), ("C", 2), ("D", 3), ("G2", 2)]:
        rep = build_rep(kind, rank)
        a0p, a0m = principal_nilpotents(rep)
        br = bracket(a0p, a0m)
        assert all(not br[i][j] for i in range(rep.n) for j in range(rep.n) if i != j)
        diag = [[br[i][i]] for i in range(rep.n)]
        cart = [[h[i][i] for h in rep.cartan] for i in range(rep.n)]
        assert linalg.solve(cart, diag, S0) is not None


def test_a0_plus_triangular_in_weight_order():
    # sorting the coordinates by decreasing H_0-weight makes every positive
    # root vector (hence A_0^+) strictly upper triangular; for types A-D the
    # stored order is already weight-sorted
    for kind, rank in [("A", 3), ("B", 2), ("C", 3), ("D", 3), ("G2", 2)]:
        rep = build_rep(kind, rank)
        diag = [rep.h0[i][i] for i in range(rep.n)]
        perm = sorted(range(rep.n), key=lambda i: (-diag[i].a, i))
        a0p, _ = principal_nilpotents(rep)
        permuted = [[a0p[perm[i]][perm[j]] for j in range(rep.n)] for i in range(rep.n)]
        for i in range(rep.n):
            for j in range(i + 1):
                assert not permuted[i][j], (kind, rank, i, j)
        if kind != "G2":
            assert perm == sorted(perm)  # identity permutation


def test_centralizer_examples():
    rep = build_rep("A", 2)
    zs = centralizer_basis(rep)
    assert [g for g, _ in zs] == [1, 2]
    # the grade-2 element spans the top root space
    top = rep.root_vector(rep.rs.root((1, 1)))
    g2_elt = zs[1][1]
    ratio = None
    for i in range(3):
        for j in range(3):
            if top[i][j]:
                ratio = g2_elt[i][j] / top[i][j]
    assert ratio and linalg.mat_equal(g2_elt, linalg.mat_scale(ratio, top))

    assert [g for g, _ in centralizer_basis(build_rep("C", 2))] == [1, 3]
    assert [g for g, _ in centralizer_basis(build_rep("G2", 2))] == [1, 5]


def test_centralizer_kills_ad():
    for kind, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G2", 2)]:
        rep = build_rep(kind, rank)
        a0p, _ = principal_nilpotents(rep)
        for grade, z in centralizer_basis(rep):
            br = bracket(a0p, z)
            assert all(not e for row in br for e in row), (kind, rank, grade)


def test_centralizer_grades_match_exponents_up_to_rank_6():
    for kind, rank in [("A", 6), ("B", 5), ("C", 5), ("D", 6)]:
        rep = build_rep(kind, rank)
        assert [g for g, _ in centralizer_basis(rep)] == rep.rs.exponents()


def test_w_basis():
    rep = build_rep("A", 2)
    ws = w_basis(rep, "standard")
    assert [src.height - 1 for src, _ in ws] == [0, 0, 1]
    assert len(ws) == len(rep.rs.positive_roots)

    ws = w_basis(build_rep("G2", 2), "standard")
    assert [src.height - 1 for src, _ in ws] == [0, 0, 1, 2, 3, 4]

    for kind, rank in [("B", 3), ("D", 4)]:
        rep = build_rep(kind, rank)
        for pol in ("standard", "flipped"):
            assert len(w_basis(rep, pol)) == len(rep.rs.positive_roots)


def test_find_complementary_roots_examples():
    rep = build_rep("A", 2)
    found = {r.coords for r in find_complementary_roots(rep)}
    assert found == {(0, 1), (1, 1)}

    rep = build_rep("G2", 2)
    found = {r.coords for r in find_complementary_roots(rep)}
    assert found == {(0, 1), (3, 2)}


def test_closed_form_lists_pass_rank_test():
    for kind, rank in [("B", 4), ("C", 4), ("D", 4)]:
        rep = build_rep(kind, rank)
        gammas = rep.rs.closed_form_complementary_roots()
        assert complement_rank_test(rep, gammas, "standard")
        assert complement_rank_test(rep, gammas, "flipped")


def test_rank_test_rejects_bad_lists():
    rep = build_rep("A", 2)
    bad = [rep.rs.root((1, 0)), rep.rs.root((0, 1))]  # heights 1, 1 != exponents
    assert not complement_rank_test(rep, bad, "standard")


def test_bplus_decomposition():
    for kind, rank, dim_b in [("A", 3, 9), ("C", 2, 6), ("D", 3, 9)]:
        rpt = verify_bplus_decomposition(build_rep(kind, rank))
        assert rpt["dim_b"] == dim_b
        assert rpt["centralizer_dim"] + rpt["image_dim"] == dim_b
        assert rpt["full_rank"]


def test_jacobi_random_triples():
    rng = random.Random(17)
    for kind, rank in [("B", 2), ("G2", 2)]:
        rep = build_rep(kind, rank)
        basis = [m for _, m in rep.basis_sparse()]
        dense = []
        for m in basis:
            d = [[S0] * rep.n for _ in range(rep.n)]
            for (i, j), v in m.items():
                d[i][j] = v
            dense.append(d)
        for _ in range(250):
            x, y, z = (dense[rng.randrange(len(dense))] for _ in range(3))
            total = madd(bracket(x, bracket(y, z)),
                         bracket(y, bracket(z, x)),
                         bracket(z, bracket(x, y)))
            assert all(not e for row in total for e in row)


def test_parameter_matrix_sl_is_companion():
    got = parameter_matrix("A", 2, "sl")
    t1, t2 = DiffRat.jet(1), DiffRat.jet(2)
    want = [[DiffRat.zero(), DiffRat.one(), DiffRat.zero()],
            [DiffRat.zero(), DiffRat.zero(), DiffRat.one()],
            [t1, t2, DiffRat.zero()]]
    for r1, r2 in zip(got, want):
        for a, b in zip(r1, r2):
            assert diff_equals(a, b)

    for l in (3, 4):
        m = parameter_matrix("A", l, "sl")
        for i in range(l):
            assert diff_equals(m[i][i + 1], DiffRat.one())
        for i in range(1, l + 1):
            assert diff_equals(m[l][i - 1], DiffRat.jet(i))


def test_parameter_matrix_ms():
    rep = build_rep("C", 2)
    got = parameter_matrix("C", 2, "ms")
    a0p, a0m = principal_nilpotents(rep)
    want = [[DiffRat.from_scalar(a0p[i][j] + a0m[i][j]) for j in range(4)]
            for i in range(4)]
    for i in range(1, 3):
        h = rep.cartan[i - 1]
        for r in range(4):
            for c in range(4):
                if h[r][c]:
                    want[r][c] = want[r][c] + DiffRat.jet(i) * DiffRat.from_scalar(h[r][c])
    for r1, r2 in zip(got, want):
        for a, b in zip(r1, r2):
            assert diff_equals(a, b)


def test_parameter_matrix_g2_positions():
    m = parameter_matrix("G2", 2, "g2")
    t1, t2 = DiffRat.jet(1), DiffRat.jet(2)
    assert diff_equals(m[3][2], t1) and diff_equals(m[5][6], -t1)
    assert diff_equals(m[3][1], t2) and diff_equals(m[4][6], -t2)


def test_parameter_matrices_lie_in_span():
    for kind, rank, family in [("A", 2, "sl"), ("C", 2, "sp"), ("B", 2, "so_odd"),
                               ("D", 3, "so_even"), ("G2", 2, "g2"), ("A", 2, "ms")]:
        rep = build_rep(kind, rank)
        coords = matrix_in_span(rep, parameter_matrix(kind, rank, family))
        assert coords is not None, (kind, rank, family)


def test_family_validation():
    with pytest.raises(ValueError):
        parameter_matrix("A", 2, "sp")  # incompatible family/kind
    with pytest.raises(ValueError):
        parameter_matrix("D", 2, "so_even")  # rank too small
    with pytest.raises(ValueError):
        normalize_family("so_mystery")
    assert normalize_family("SL") == "sl"
    assert normalize_family("d") == "so_even"


def test_matrix_json_round_trip():
    m = parameter_matrix("G2", 2, "g2")
    blob = matrix_to_json(m, "G2", 2)
    assert blob["dim"] == 7
    back = matrix_from_json(blob)
    for r1, r2 in zip(m, back):
        for a, b in zip(r1, r2):
            assert diff_equals(a, b)


def test_trace_zero_everywhere():
    for kind, rank in [("A", 2), ("B", 2), ("C", 2), ("D", 3), ("G2", 2)]:
        rep = build_rep(kind, rank)
        for h in rep.cartan:
            assert not linalg.mat_trace(h)
        for root in rep.roots():
            assert not linalg.mat_trace(rep.root_vector(root))
