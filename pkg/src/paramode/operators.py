"""Scalar linear differential operators with DiffRat coefficients.

A LinDiffOp is kept in the monic normal form L(y) = y^(n) - sum a_i y^(i).
`matrix_to_scalar` eliminates a first-order system along a cyclic coordinate,
`reference_operator` expands the five classical explicit operators into the
same normal form, and the two must agree coefficientwise; that comparison is
the backbone of the acceptance suite.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

from . import linalg
from .jets import DiffRat, diff_equals
from .roots import normalize_kind
from .scalars import Scalar

Expr = Dict[int, DiffRat]  # order -> coefficient, meaning sum c_i y^(i)

_ZERO = DiffRat.zero()
_ONE = DiffRat.one()


class CyclicityError(ValueError):
    """The chosen coordinate is not cyclic for the given matrix."""

    def __init__(self, index: int, achieved_rank: int, needed: int):
        self.index = index
        self.achieved_rank = achieved_rank
        self.needed = needed
        super().__init__(
            f"coordinate {index} is not cyclic: rank {achieved_rank} < {needed}"
        )


# --- expression helpers ------------------------------------------------------

def _expr_term(coeff: DiffRat, order: int) -> Expr:
    return {order: coeff} if coeff else {}


def _expr_add(a: Expr, b: Expr) -> Expr:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        s = v if s is None else s + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _expr_neg(a: Expr) -> Expr:
    return {k: -v for k, v in a.items()}

def _expr_sub(a: Expr, b: Expr) -> Expr:
    return _expr_add(a, _expr_neg(b))


def _expr_scale(a: Expr, c: DiffRat) -> Expr:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def _expr_D(a: Expr, times: int = 1) -> Expr:
    """Differentiate sum c_i y^(i) with respect to the ambient derivation."""
    for _ in range(times):
        out: Expr = {}
        for k, v in a.items():
            dv = v.derive()
            if dv:
                out = _expr_add(out, {k: dv})
            out = _expr_add(out, {k + 1: v})
        a = out
    return a


def _t(i: int, j: int = 0) -> DiffRat:
    return DiffRat.jet(i, j)


class LinDiffOp:
    """Monic scalar operator L(y) = y^(n) - sum_{i<n} a_i y^(i)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[DiffRat]):
        if order < 1:
            raise ValueError("operator order must be >= 1")
        coeffs = list(coeffs)
        if len(coeffs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_expr(cls, expr: Expr) -> "LinDiffOp":
        if not expr:
            raise ValueError("zero operator")
        n = max(expr)
        lead = expr[n]
        coeffs = []
        for i in range(n):
            c = expr.get(i, _ZERO)
            coeffs.append(-(c / lead) if c else _ZERO)
        return cls(n, coeffs)

    def to_expr(self) -> Expr:
        out: Expr = {self.order: _ONE}
        for i, a in enumerate(self.coeffs):
            if a:
                out[i] = -a
        return out

    def __eq__(self, other):
        if not isinstance(other, LinDiffOp):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(diff_equals(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    # rendering -----------------------------------------------------------

    def __str__(self):
        parts = [_y_term(self.order)]
        for i in range(self.order - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            c = a  # displayed sign: ... - a_i y^(i)
            if _display_negative(c):
                parts.append("+")
                c = -c
            else:
                parts.append("-")
            parts.append(_coeff_term(c, _y_term(i)))
        return " ".join(parts) + " = 0"

    def latex(self) -> str:
        parts = [_y_term_latex(self.order)]
        for i in range(self.order - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            c = a
            if _display_negative(c):
                parts.append("+")
                c = -c
            else:
                parts.append("-")
            parts.append(_coeff_term_latex(c, _y_term_latex(i)))
        return " ".join(parts) + " = 0"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        return f"LinDiffOp({self})"


def _y_term(i: int) -> str:
    if i == 0:
        return "y"
    if i <= 3:
        return "y" + "'" * i
    return f"y^({i})"


def _y_term_latex(i: int) -> str:
    if i == 0:
        return "y"
    if i <= 3:
        return "y" + "'" * i
    return f"y^{{({i})}}"


def _display_negative(c: DiffRat) -> bool:
    return c.num.leading_coeff().sign() < 0


def _coeff_term(c: DiffRat, yterm: str) -> str:
    if c == _ONE:
        return yterm
    body = str(c)
    if not c.is_polynomial() or len(c.num.terms) > 1:
        body = f"({body})"
    return f"{body} {yterm}"


def _coeff_term_latex(c: DiffRat, yterm: str) -> str:
    if c == _ONE:
        return yterm
    body = diffrat_latex(c)
    if c.is_polynomial() and len(c.num.terms) > 1:
        body = f"\\left({body}\\right)"
    return f"{body} {yterm}"


def diffrat_latex(x: DiffRat) -> str:
    if x.is_polynomial():
        return _poly_latex(x.num)
    return f"\\frac{{{_poly_latex(x.num)}}}{{{_poly_latex(x.den)}}}"


def _poly_latex(p) -> str:
    text = str(p)
    # textual form is already canonical; translate jet and sqrt2 notation
    import re

    text = text.replace("*", " ")
    text = re.sub(r"t(\d+)\^\((\d+)\)", r"t_{\1}^{(\2)}", text)
    text = re.sub(r"t(\d+)('+)", lambda m: f"t_{{{m.group(1)}}}{m.group(2)}", text)
    text = re.sub(r"t(\d+)", r"t_{\1}", text)
    text = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", text)
    text = text.replace("sqrt2", "\\sqrt{2}")
    return text


# --- matrix-to-scalar conversion ----------------------------------------------

def matrix_to_scalar(a: List[List[DiffRat]], cyclic_index: int = 1) -> LinDiffOp:
    """Eliminate d(y) = A y along coordinate j into one scalar operator.

    Row vectors v_0 = e_j, v_{k+1} = d(v_k) + v_k A satisfy y_j^(k) = v_k y;
    if v_0..v_{n-1} span the row space, solving v_n = sum a_i v_i gives the
    monic operator annihilating y_j for every solution y.
    """
    n = len(a)
    if not 1 <= cyclic_index <= n:
        raise ValueError(f"cyclic index {cyclic_index} out of range 1..{n}")
    v = [_ZERO] * n
    v[cyclic_index - 1] = _ONE
    rows = [v]
    for _ in range(n):
        prev = rows[-1]
        nxt = [prev[c].derive() for c in range(n)]
        for c in range(n):
            acc = nxt[c]
            for k in range(n):
                if prev[k] and a[k][c]:
                    acc = acc + prev[k] * a[k][c]
            nxt[c] = acc
        rows.append(nxt)
    system = [[rows[i][c] for i in range(n)] for c in range(n)]
    rhs = [[rows[n][c]] for c in range(n)]
    sol, rank = linalg.solve_unique(system, rhs, _ZERO)
    if sol is None:
        raise CyclicityError(cyclic_index, rank, n)
    return LinDiffOp(n, [sol[i][0] for i in range(n)])


DEFAULT_CYCLIC_INDEX = {"sl": 1, "sp": 1, "so_odd": 1, "so_even": 1, "g2": 2}


def find_cyclic_index(a: List[List[DiffRat]]) -> int:
    """First standard basis coordinate that is cyclic for the matrix."""
    last = None
    for j in range(1, len(a) + 1):
        try:
            matrix_to_scalar(a, j)
            return j
        except CyclicityError as exc:
            last = exc
    raise last


# --- the five explicit operators ------------------------------------------------

def reference_operator(kind: str, rank: int) -> LinDiffOp:
    """The classical explicit operator of the family, in monic normal form.

    Type D substitutes the auxiliary expressions z_1 and z_2; z_2 carries the
    factor w'/w with w = t_2^(l-2) + (-1)^(l-2) t_1, so its coefficients are
    genuinely rational.  w is a nonzero polynomial, which we assert.  Note
    the tail sum uses the derivative t_2^(l-2-i), not the power t_2^{l-2-i}:
    the two readings disagree, and only the derivative reading matches the
    matrix-to-scalar route.
    """
    kind = normalize_kind(kind)
    l = rank
    if kind == "A":
        expr: Expr = {l + 1: _ONE}
        for i in range(1, l + 1):
            expr = _expr_sub(expr, _expr_term(_t(i), i - 1))
        return LinDiffOp.from_expr(expr)
    if kind == "C":
        _require(l >= 2, "type C needs rank >= 2")
        expr = {2 * l: _ONE}
        for i in range(1, l + 1):
            piece = _expr_D(_expr_term(_t(i), l - i), l - i)
            if i % 2 == 0:
                piece = _expr_neg(piece)
            expr = _expr_sub(expr, piece)
        return LinDiffOp.from_expr(expr)
    if kind == "B":
        _require(l >= 2, "type B needs rank >= 2")
        expr = {2 * l + 1: _ONE}
        for i in range(1, l + 1):
            piece = _expr_add(
                _expr_D(_expr_term(_t(i), l + 1 - i), l - i),
                _expr_D(_expr_term(_t(i), l - i), l + 1 - i),
            )
            if i % 2 == 0:
                piece = _expr_neg(piece)
            expr = _expr_sub(expr, piece)
        return LinDiffOp.from_expr(expr)
    if kind == "G2":
        t1, t2 = _t(1), _t(2)
        expr = {7: _ONE}
        expr = _expr_sub(expr, _expr_scale(_expr_term(t2, 1), DiffRat.const(2)))
        expr = _expr_sub(expr, _expr_scale(_expr_D(_expr_term(t2, 0)), DiffRat.const(2)))
        expr = _expr_sub(expr, _expr_D(_expr_term(t1, 4)))
        expr = _expr_sub(expr, _expr_D(_expr_term(t1, 1), 4))
        inner = _expr_scale(_expr_D(_expr_term(t1, 1)), t1)
        expr = _expr_add(expr, _expr_D(inner))
        return LinDiffOp.from_expr(expr)
    if kind == "D":
        _require(l >= 3, "type D needs rank >= 3")
        t1, t2 = _t(1), _t(2)
        z1: Expr = {l: _ONE, l - 2: -t2, 0: -t1}
        w = DiffRat.jet(2, l - 2) + (_t(1) if (l - 2) % 2 == 0 else -_t(1))
        assert w, "short-root pivot polynomial must be nonzero"
        z2_inner: Expr = {2 * l - 1: _ONE}
        for i in range(3, l + 1):
            piece = _expr_add(
                _expr_D(_expr_term(_t(i), l - i), l + 1 - i),
                _expr_D(_expr_term(_t(i), l + 1 - i), l - i),
            )
            piece = _expr_scale(piece, DiffRat.const(2 if i % 2 == 0 else -2))
            z2_inner = _expr_sub(z2_inner, piece)
        z2_inner = _expr_sub(
            z2_inner, _expr_D({l - 2: t2, 0: t1}, l - 1)
        )
        for i in range(0, l - 2):
            z2_inner = _expr_sub(
                z2_inner, _expr_D(_expr_scale(z1, DiffRat.jet(2, l - 3 - i)), i)
            )
        z2 = _expr_scale(z2_inner, w.derive() / w)
        expr = {2 * l: _ONE}
        for i in range(3, l + 1):
            piece = _expr_add(
                _expr_D(_expr_term(_t(i), l - i), l + 2 - i),
                _expr_D(_expr_term(_t(i), l + 1 - i), l + 1 - i),
            )
            piece = _expr_scale(piece, DiffRat.const(2 if i % 2 == 0 else -2))
            expr = _expr_sub(expr, piece)
        expr = _expr_sub(expr, _expr_D({l - 2: t2, 0: t1}, l))
        signed_t1 = t1 if l % 2 == 0 else -t1
        expr = _expr_sub(expr, _expr_scale(z1, signed_t1))
        expr = _expr_sub(expr, z2)
        for i in range(0, l - 1):
            expr = _expr_sub(
                expr, _expr_D(_expr_scale(z1, DiffRat.jet(2, l - 2 - i)), i)
            )
        return LinDiffOp.from_expr(expr)
    raise ValueError(f"unsupported kind {kind!r}")


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


# --- adjoints -------------------------------------------------------------------

def _raw_adjoint(expr: Expr) -> Expr:
    """Formal adjoint sum b_i y^(i) -> sum (-1)^i (b_i y)^(i), expanded."""
    out: Expr = {}
    for i, b in expr.items():
        piece = _expr_D({0: b}, i)
        if i % 2 == 1:
            piece = _expr_neg(piece)
        out = _expr_add(out, piece)
    return out


def formal_adjoint(op: LinDiffOp) -> LinDiffOp:
    """Adjoint in monic normal form (leading coefficient renormalized to +1)."""
    return LinDiffOp.from_expr(_raw_adjoint(op.to_expr()))


def adjoint_symmetry(op: LinDiffOp) -> str:
    """Classify as 'selfadjoint', 'antiselfadjoint' or 'none' (exactly).

    A univariate probe runs first: substituting fixed polynomials t_i ->
    r_i(z) commutes with the derivation, so computing the adjoint over the
    rational functions in z and finding a mismatch exactly disproves
    symmetry without expanding the symbolic adjoint (whose repeated
    derivatives of rational coefficients can be very large).  Only operators
    the probe cannot separate reach the full diff_equals comparison.
    """
    self_ok, anti_ok = _adjoint_probe(op)
    if not (self_ok or anti_ok):
        return "none"
    expr = op.to_expr()
    raw = _raw_adjoint(expr)
    if self_ok and _expr_equal(raw, expr):
        return "selfadjoint"
    if anti_ok and _expr_equal(raw, _expr_neg(expr)):
        return "antiselfadjoint"
    return "none"


def _expr_equal(a: Expr, b: Expr) -> bool:
    for k in set(a) | set(b):
        if not diff_equals(a.get(k, _ZERO), b.get(k, _ZERO)):
            return False
    return True


def _adjoint_probe(op: LinDiffOp) -> tuple:
    """(self plausible, anti plausible) under exact univariate substitutions.

    False entries are proven: a specialized counterexample rules the
    symmetry out.  True entries are only "not disproved" and need the
    symbolic comparison.  If no substitution avoids the denominators, both
    entries stay True.
    """
    from math import comb

    from .unipoly import SpecializationError, UniPoly, specialize

    n = op.order
    b: Dict[int, DiffRat] = {n: _ONE}
    width = 1
    for i, a in enumerate(op.coeffs):
        if a:
            b[i] = -a
            width = max(width, a.num.max_index(), a.den.max_index())
    self_ok = anti_ok = True
    for probe in range(3):
        polys = [UniPoly([Fraction(probe + 1, 2), Fraction(i + 2),
                          Fraction(1, i + probe + 2), Fraction(probe - i)])
                 for i in range(width)]
        try:
            spec = {j: specialize(c, polys) for j, c in b.items()}
        except (SpecializationError, ZeroDivisionError):
            continue
        derivs = {}
        for j, s in spec.items():
            row = [s]
            for _ in range(j):
                row.append(row[-1].derivative())
            derivs[j] = row
        for i in range(n + 1):
            acc = None
            for j in range(i, n + 1):
                if j not in spec:
                    continue
                term = derivs[j][j - i] * Fraction(comb(j, i))
                if j % 2 == 1:
                    term = -term
                acc = term if acc is None else acc + term
            want = spec.get(i)
            if acc is None:
                acc = specialize(_ZERO, polys)
            if want is None:
                want = specialize(_ZERO, polys)
            if not (acc == want):
                self_ok = False
            if not (acc == -want):
                anti_ok = False
            if not (self_ok or anti_ok):
                return False, False
        return self_ok, anti_ok
    return True, True


# --- classically displayed LaTeX for the five families ----------------------------------

def reference_operator_latex(kind: str, rank: int) -> str:
    """LaTeX of the family operator in its classical displayed shape."""
    kind = normalize_kind(kind)
    l = rank

    def yd(i: int) -> str:
        return _y_term_latex(i)

    def tvar(i: int, j: int = 0) -> str:
        if j == 0:
            return f"t_{{{i}}}"
        return f"t_{{{i}}}^{{({j})}}"

    def wrap(inner: str, m: int) -> str:
        if m == 0:
            return inner
        return f"({inner})^{{({m})}}" if m > 3 else f"({inner})" + "'" * m

    terms: List[str]
    if kind == "A":
        body = " - ".join(f"{tvar(i)} {yd(i - 1)}" for i in range(l, 0, -1))
        return f"{yd(l + 1)} - {body} = 0"
    if kind == "C":
        parts = [yd(2 * l)]
        for i in range(1, l + 1):
            sign = "-" if i % 2 == 1 else "+"
            parts.append(f"{sign} {wrap(f'{tvar(i)} {yd(l - i)}', l - i)}")
        return " ".join(parts) + " = 0"
    if kind == "B":
        parts = [yd(2 * l + 1)]
        for i in range(1, l + 1):
            sign = "-" if i % 2 == 1 else "+"
            inner = (f"{wrap(f'{tvar(i)} {yd(l + 1 - i)}', l - i)} "
                     f"+ {wrap(f'{tvar(i)} {yd(l - i)}', l + 1 - i)}")
            parts.append(f"{sign} \\left({inner}\\right)")
        return " ".join(parts) + " = 0"
    if kind == "G2":
        return (f"{yd(7)} - 2 t_{{2}} y' - 2 (t_{{2}} y)' - (t_{{1}} {yd(4)})' "
                f"- (t_{{1}} y')^{{(4)}} + (t_{{1}} (t_{{1}} y')')' = 0")
    if kind == "D":
        parts = [yd(2 * l)]
        for i in range(3, l + 1):
            sign = "+" if i % 2 == 1 else "-"
            inner = (f"{wrap(f'{tvar(i)} {yd(l - i)}', l + 2 - i)} "
                     f"+ {wrap(f'{tvar(i)} {yd(l + 1 - i)}', l + 1 - i)}")
            parts.append(f"{sign} 2 \\left({inner}\\right)")
        parts.append(f"- {wrap(f'{tvar(2)} {yd(l - 2)} + {tvar(1)} y', l)}")
        t1z = "t_{1} z_1" if l % 2 == 0 else "- t_{1} z_1"
        parts.append(f"- ({t1z} + z_2)")
        parts.append(
            f"- \\sum_{{i=0}}^{{{l - 2}}} (t_{{2}}^{{({l - 2}-i)}} z_1)^{{(i)}}"
        )
        head = " ".join(parts) + " = 0"
        z1def = f"z_1 = {yd(l)} - {tvar(2)} {yd(l - 2)} - {tvar(1)} y"
        sgn = "+" if (l - 2) % 2 == 0 else "-"
        z2def = (f"z_2 = \\frac{{(t_{{2}}^{{({l - 2})}} {sgn} t_{{1}})'}}"
                 f"{{t_{{2}}^{{({l - 2})}} {sgn} t_{{1}}}} \\cdot (\\cdots)")
        return f"{head}, \\quad {z1def}, \\quad {z2def}"
    raise ValueError(kind)
