import random

import pytest

from paramode.chevalley import parameter_matrix
from paramode.jets import DiffRat, diff_equals, parse_diffrat
from paramode.operators import (CyclicityError, DEFAULT_CYCLIC_INDEX, LinDiffOp,
                                adjoint_symmetry, find_cyclic_index,
                                formal_adjoint, matrix_to_scalar,
                                reference_operator, reference_operator_latex)

R0 = DiffRat.zero()
R1 = DiffRat.one()


def _op(order, coeff_texts):
    return LinDiffOp(order, [parse_diffrat(t) for t in coeff_texts])


def test_matrix_to_scalar_sl2():
    got = matrix_to_scalar(parameter_matrix("A", 2, "sl"), 1)
    assert got == _op(3, ["t1", "t2", "0"])
    assert str(got) == "y''' - t2 y' - t1 y = 0"


def test_matrix_to_scalar_1x1():
    got = matrix_to_scalar([[DiffRat.jet(1)]], 1)
    assert got == _op(1, ["t1"])
    assert str(got) == "y' - t1 y = 0"


def test_matrix_to_scalar_g2():
    got = matrix_to_scalar(parameter_matrix("G2", 2, "g2"), 2)
    assert got == reference_operator("G2", 2)


def test_reference_operator_sl():
    assert reference_operator("A", 3) == _op(4, ["t1", "t2", "t3", "0"])


def test_reference_operator_sp2():
    # y'''' - (t1 y')' + t2 y expands to a_2 = t1, a_1 = t1', a_0 = -t2
    assert reference_operator("C", 2) == _op(4, ["-t2", "t1'", "t1", "0"])


def test_reference_operator_so5():
    # y^(5) - (t1 y'')' - (t1 y')'' + t2 y' + (t2 y)'
    want = _op(5, ["-t2'", "t1'' - 2*t2", "3*t1'", "2*t1", "0"])
    assert reference_operator("B", 2) == want


def test_five_family_reproduction():
    cases = ([("A", l, "sl") for l in (2, 3, 4, 5)] +
             [("C", l, "sp") for l in (2, 3, 4)] +
             [("B", l, "so_odd") for l in (2, 3, 4)] +
             [("D", l, "so_even") for l in (3, 4)] +
             [("G2", 2, "g2")])
    for kind, rank, family in cases:
        a = parameter_matrix(kind, rank, family)
        j = DEFAULT_CYCLIC_INDEX[family]
        assert matrix_to_scalar(a, j) == reference_operator(kind, rank), (kind, rank)


def test_so_even_coefficients_are_rational():
    op = reference_operator("D", 3)
    rational = [c for c in op.coeffs if not c.is_polynomial()]
    assert rational
    # every denominator is the short-root pivot t2' - t1 (rank 3), up to sign
    w = (DiffRat.jet(2, 1) - DiffRat.jet(1)).num
    for c in rational:
        d = DiffRat(c.den)
        assert diff_equals(d, DiffRat(w)) or diff_equals(d, -DiffRat(w))


def test_cyclicity_error_reports_rank():
    a = [[R0, R0], [R0, R0]]
    with pytest.raises(CyclicityError) as info:
        matrix_to_scalar(a, 1)
    assert info.value.achieved_rank == 1
    assert info.value.needed == 2

    with pytest.raises(ValueError):
        matrix_to_scalar(a, 3)  # index out of range


def test_find_cyclic_index():
    assert find_cyclic_index(parameter_matrix("A", 2, "sl")) == 1
    m = parameter_matrix("G2", 2, "g2")
    j = find_cyclic_index(m)
    op = matrix_to_scalar(m, j)  # the found index must actually work
    assert op.order == 7
    # the default index used for the 7x7 family is 2 and must work too
    assert matrix_to_scalar(m, 2).order == 7


def test_find_cyclic_index_exhaustion():
    zero = [[R0, R0], [R0, R0]]
    with pytest.raises(CyclicityError):
        find_cyclic_index(zero)


def test_formal_adjoint_examples():
    ypp = _op(2, ["0", "0"])  # y''
    assert formal_adjoint(ypp) == ypp
    assert adjoint_symmetry(ypp) == "selfadjoint"

    yp = _op(1, ["0"])  # y'
    assert formal_adjoint(yp) == yp  # normalized to +1 leading coefficient
    assert adjoint_symmetry(yp) == "antiselfadjoint"

    schrodinger = _op(2, ["-t1", "0"])  # y'' + t1 y
    assert formal_adjoint(schrodinger) == schrodinger
    assert adjoint_symmetry(schrodinger) == "selfadjoint"


def test_adjoint_symmetry_families():
    assert adjoint_symmetry(reference_operator("C", 3)) == "selfadjoint"
    assert adjoint_symmetry(reference_operator("B", 2)) == "antiselfadjoint"
    assert adjoint_symmetry(reference_operator("A", 2)) == "none"
    # rational coefficients: classification must terminate quickly and say none
    assert adjoint_symmetry(reference_operator("D", 4)) == "none"


def test_reproduction_beyond_small_ranks():
    # one rank past the standard window per family; everything stays exact
    for kind, rank, family, j in [("A", 6, "sl", 1), ("C", 5, "sp", 1),
                                  ("B", 5, "so_odd", 1), ("D", 5, "so_even", 1)]:
        a = parameter_matrix(kind, rank, family)
        assert matrix_to_scalar(a, j) == reference_operator(kind, rank), (kind, rank)


def test_adjoint_is_involution_up_to_sign():
    rng = random.Random(43)
    for _ in range(100):
        order = rng.randint(1, 6)
        coeffs = []
        for _ in range(order):
            if rng.random() < 0.4:
                coeffs.append(R0)
            else:
                c = DiffRat.const(rng.randint(-3, 3))
                if rng.random() < 0.6:
                    c = c * DiffRat.jet(rng.randint(1, 2), rng.randint(0, 1))
                coeffs.append(c)
        op = LinDiffOp(order, coeffs)
        assert formal_adjoint(formal_adjoint(op)) == op


def test_operator_text_rendering():
    op = reference_operator("C", 2)
    assert str(op) == "y^(4) - t1 y'' - t1' y' + t2 y = 0"
    js = op.to_json()
    assert js["order"] == 4
    assert js["coeffs"] == ["-t2", "t1'", "t1", "0"]


def test_operator_latex_rendering():
    op = reference_operator("A", 2)
    assert op.latex() == "y''' - t_{2} y' - t_{1} y = 0"
    shaped = reference_operator_latex("C", 2)
    assert shaped == "y^{(4)} - (t_{1} y')' + t_{2} y = 0"
    shaped = reference_operator_latex("G2", 2)
    assert "(t_{1} (t_{1} y')')'" in shaped


def test_operator_validation():
    with pytest.raises(ValueError):
        LinDiffOp(0, [])
    with pytest.raises(ValueError):
        LinDiffOp(2, [R0])
    with pytest.raises(ValueError):
        reference_operator("D", 2)
    with pytest.raises(ValueError):
        reference_operator("E", 3)
