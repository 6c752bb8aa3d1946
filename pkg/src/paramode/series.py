"""Truncated power-series solutions of d(y) = A y, exactly.

The higher-derivative recursion A_1 = A, A_k = d(A_{k-1}) + A_{k-1} A gives
all formal derivatives of a fundamental solution; evaluating jets at a point
and dividing by factorials builds the truncated Taylor solution with initial
value 1.  The same recursion run over rational functions in z after a
substitution t_i -> r_i(z) gives a second, independent series, and
`diagram_check` verifies the two routes agree coefficientwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .jets import DiffRat, JetVar
from .scalars import Scalar
from .unipoly import UniPoly, UniRat, specialize

_S0 = Scalar.zero()
_S1 = Scalar.one()


class JetPoint:
    """Rational values for the jets t_i^(j), i <= l, j < order."""

    __slots__ = ("values", "width", "depth")

    def __init__(self, values: Dict[JetVar, Scalar]):
        self.values = {v: (c if isinstance(c, Scalar) else Scalar(c))
                       for v, c in values.items()}
        self.width = max((v.index for v in self.values), default=0)
        self.depth = 1 + max((v.order for v in self.values), default=-1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "JetPoint":
        """rows[i-1][j] = value of t_i^(j); short rows are padded with zeros."""
        vals: Dict[JetVar, Scalar] = {}
        for i, row in enumerate(rows, start=1):
            for j, c in enumerate(row):
                vals[JetVar(i, j)] = c if isinstance(c, Scalar) else Scalar(c)
        return cls(vals)

    @classmethod
    def from_polynomials(cls, polys: Sequence[UniPoly], c, depth: int) -> "JetPoint":
        """Jet values t_i^(j) -> (d^j r_i)(c) for j < depth."""
        rows = []
        for p in polys:
            p = p if isinstance(p, UniPoly) else UniPoly(p)
            row = []
            for _ in range(depth):
                row.append(p(c))
                p = p.derivative()
            rows.append(row)
        return cls.from_rows(rows)

    def padded(self, width: int, depth: int) -> "JetPoint":
        """Extend with zeros so that all jets i <= width, j < depth are covered."""
        vals = dict(self.values)
        for i in range(1, width + 1):
            for j in range(depth):
                vals.setdefault(JetVar(i, j), _S0)
        return JetPoint(vals)

    def __repr__(self):
        return f"JetPoint(width={self.width}, depth={self.depth})"


class SeriesMatrix:
    """n x n matrix of truncated power series in T over Scalar.

    coeffs[k] is the k-th coefficient matrix; all entries share the uniform
    truncation order (terms of degree >= order are dropped).
    """

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, coeffs: Sequence[List[List[Scalar]]]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a SeriesMatrix needs at least the constant term")
        self.coeffs = coeffs
        self.order = len(coeffs)
        self.n = len(coeffs[0])

    @property
    def constant_term(self) -> List[List[Scalar]]:
        return self.coeffs[0]

    def entry(self, i: int, j: int) -> List[Scalar]:
        return [c[i][j] for c in self.coeffs]

    def derivative(self) -> "SeriesMatrix":
        if self.order < 2:
            raise ValueError("cannot differentiate a length-1 truncation")
        return SeriesMatrix(
            [linalg.mat_scale(Scalar(k), self.coeffs[k]) for k in range(1, self.order)]
        )

    def mul(self, other: "SeriesMatrix") -> "SeriesMatrix":
        order = min(self.order, other.order)
        out = []
        for k in range(order):
            acc = None
            for i in range(k + 1):
                term = linalg.mat_mul(self.coeffs[i], other.coeffs[k - i])
                acc = term if acc is None else linalg.mat_add(acc, term)
            out.append(acc)
        return SeriesMatrix(out)

    def sub(self, other: "SeriesMatrix") -> "SeriesMatrix":
        order = min(self.order, other.order)
        return SeriesMatrix(
            [linalg.mat_sub(self.coeffs[k], other.coeffs[k]) for k in range(order)]
        )

    def truncate(self, order: int) -> "SeriesMatrix":
        return SeriesMatrix(self.coeffs[:order])

    def is_zero(self) -> bool:
        return not any(any(any(e for e in row) for row in c) for c in self.coeffs)

    def is_invertible(self) -> bool:
        try:
            linalg.inverse(self.constant_term, _S0, _S1)
        except ValueError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        if self.order != other.order or self.n != other.n:
            return False
        return all(linalg.mat_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def to_json(self) -> list:
        return [[[str(e) for e in row] for row in c] for c in self.coeffs]

    def __repr__(self):
        return f"SeriesMatrix(n={self.n}, order={self.order})"


# --- the higher-derivative recursion ------------------------------------------

def derivative_matrices(a: List[List[DiffRat]], count: int) -> List[List[List[DiffRat]]]:
    """[A_1, ..., A_count] with A_1 = A and A_k = d(A_{k-1}) + A_{k-1} A."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [a]
    for _ in range(count - 1):
        prev = out[-1]
        out.append(linalg.mat_add(
            [[e.derive() for e in row] for row in prev],
            linalg.mat_mul(prev, a),
        ))
    return out


def matrix_jets(a: List[List[DiffRat]]) -> Tuple[int, int]:
    """(max parameter index, max jet order) appearing in the matrix."""
    width = 0
    depth = 0
    for row in a:
        for e in row:
            for v in list(e.num.jets()) + list(e.den.jets()):
                width = max(width, v.index)
                depth = max(depth, v.order + 1)
    return width, depth


def _evaluate_matrix(a: List[List[DiffRat]], point: JetPoint) -> List[List[Scalar]]:
    return [[e.evaluate(point.values) for e in row] for row in a]


def taylor_solution(a: List[List[DiffRat]], point: JetPoint, order: int) -> SeriesMatrix:
    """Truncated fundamental solution X(T) = 1 + sum A_k(p)/k! T^k, k < order.

    The point must cover every jet demanded by the recursion (an uncovered
    jet raises KeyError) and no denominator may vanish at it.
    """
    n = len(a)
    coeffs = [linalg.identity(n, _S0, _S1)]
    if order > 1:
        mats = derivative_matrices(a, order - 1)
        fact = 1
        for k, mk in enumerate(mats, start=1):
            fact *= k
            coeffs.append(
                linalg.mat_scale(Scalar(Fraction(1, fact)), _evaluate_matrix(mk, point))
            )
    return SeriesMatrix(coeffs)


def matrix_taylor(a: List[List[DiffRat]], point: JetPoint, order: int) -> SeriesMatrix:
    """Taylor expansion of the matrix itself along the jet point."""
    coeffs = []
    current = a
    fact = 1
    for k in range(order):
        if k:
            fact *= k
            current = [[e.derive() for e in row] for row in current]
        coeffs.append(
            linalg.mat_scale(Scalar(Fraction(1, fact)), _evaluate_matrix(current, point))
        )
    return SeriesMatrix(coeffs)


def ode_residual(a: List[List[DiffRat]], point: JetPoint, order: int) -> SeriesMatrix:
    """dX/dT - Ahat(T) X, truncated to order-1 terms; must vanish."""
    x = taylor_solution(a, point, order)
    ahat = matrix_taylor(a, point, order - 1)
    return x.derivative().sub(ahat.mul(x.truncate(order - 1)))


# --- dual-route specialization check --------------------------------------------

def rational_taylor_solution(spec_a: List[List[UniRat]], c, order: int) -> SeriesMatrix:
    """Series route over rational functions in z: recursion, then evaluate at c."""
    n = len(spec_a)
    coeffs = [linalg.identity(n, _S0, _S1)]
    current = spec_a
    fact = 1
    for k in range(1, order):
        if k > 1:
            current = linalg.mat_add(
                [[e.derivative() for e in row] for row in current],
                linalg.mat_mul(current, spec_a),
            )
        fact *= k
        coeffs.append(
            linalg.mat_scale(Scalar(Fraction(1, fact)),
                             [[e(c) for e in row] for row in current])
        )
    return SeriesMatrix(coeffs)


def diagram_check(a: List[List[DiffRat]], polys: Sequence, c, order: int) -> bool:
    """Taylor-then-specialize equals specialize-then-Taylor, at finite order.

    The jet point takes t_i^(j) -> (d^j r_i)(c); route one runs the jet
    recursion and evaluates, route two substitutes t_i -> r_i(z) and runs the
    same recursion over rational functions around z = c.  Invalid data (a
    denominator collapsing under the substitution, or c on a pole) raises.
    """
    polys = [p if isinstance(p, UniPoly) else UniPoly(p) for p in polys]
    width, depth = matrix_jets(a)
    if width > len(polys):
        raise ValueError(f"matrix uses t{width} but only {len(polys)} images given")
    point = JetPoint.from_polynomials(polys, c, depth + order + 1)
    route1 = taylor_solution(a, point, order)
    spec_a = [[specialize(e, polys) for e in row] for row in a]
    route2 = rational_taylor_solution(spec_a, c, order)
    return route1 == route2


# --- scalar-operator consistency --------------------------------------------------

def _series_mul(a: List[Scalar], b: List[Scalar], order: int) -> List[Scalar]:
    out = [_S0] * order
    for i, x in enumerate(a[:order]):
        if not x:
            continue
        for j, y in enumerate(b[: order - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _series_derivative(a: List[Scalar]) -> List[Scalar]:
    return [a[k] * Scalar(k) for k in range(1, len(a))]


def diffrat_series(x: DiffRat, point: JetPoint, order: int) -> List[Scalar]:
    """Taylor coefficients of a differential fraction along the jet point."""
    out = []
    fact = 1
    current = x
    for k in range(order):
        if k:
            fact *= k
            current = current.derive()
        out.append(current.evaluate(point.values) / Scalar(fact))
    return out


def operator_annihilates(op, a: List[List[DiffRat]], point: JetPoint, order: int,
                         cyclic_index: int = 1) -> bool:
    """The scalar operator kills the cyclic row of the series solution.

    For each column of the fundamental series solution, applying
    y^(n) - sum a_i y^(i) with Taylor-expanded coefficients must vanish modulo
    T^(order - n).  The point must be deep enough to cover the coefficient
    expansions as well.
    """
    from .operators import LinDiffOp  # local import to avoid a cycle

    assert isinstance(op, LinDiffOp)
    n = op.order
    if order <= n:
        raise ValueError("truncation order must exceed the operator order")
    x = taylor_solution(a, point, order)
    res_order = order - n
    coeff_series = [diffrat_series(c, point, res_order) if c else None
                    for c in op.coeffs]
    row = cyclic_index - 1
    for col in range(x.n):
        u = x.entry(row, col)
        derivs = [u]
        for _ in range(n):
            derivs.append(_series_derivative(derivs[-1]))
        acc = list(derivs[n][:res_order])
        while len(acc) < res_order:
            acc.append(_S0)
        for i, cs in enumerate(coeff_series):
            if cs is None:
                continue
            prod = _series_mul(cs, derivs[i], res_order)
            acc = [p - q for p, q in zip(acc, prod)]
        if any(acc):
            return False
    return True
