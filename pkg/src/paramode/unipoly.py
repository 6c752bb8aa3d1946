"""Univariate polynomials and rational functions in z over Scalar.

These are the targets of specialization t_i -> r_i(z): jets map to honest
z-derivatives, so the substitution is a differential homomorphism.  The same
arithmetic drives the power-series route over the rational function field in
`series.diagram_check`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .jets import DiffRat, JetVar
from .scalars import Scalar

_S0 = Scalar.zero()
_S1 = Scalar.one()


class SpecializationError(ValueError):
    """Raised when a substitution hits a vanishing denominator."""


class UniPoly:
    """Dense univariate polynomial over Scalar; index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if isinstance(c, Scalar) else Scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((_S1,))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def z(cls) -> "UniPoly":
        return cls((_S0, _S1))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly(())
        out = [_S0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def scale(self, c: Scalar) -> "UniPoly":
        return UniPoly([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def __divmod__(self, other: "UniPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn = other.coeffs
        inv_lead = dn[-1].invert()
        q = [_S0] * max(len(rem) - len(dn) + 1, 0)
        for k in range(len(rem) - len(dn), -1, -1):
            c = rem[k + len(dn) - 1] * inv_lead
            if c:
                q[k] = c
                for i, d in enumerate(dn):
                    rem[k + i] = rem[k + i] - c * d
        return UniPoly(q), UniPoly(rem[: len(dn) - 1])

    def __call__(self, c) -> Scalar:
        c = c if isinstance(c, Scalar) else Scalar(c)
        acc = _S0
        for coeff in reversed(self.coeffs):
            acc = acc * c + coeff
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                body = str(c)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                body = zk if c == _S1 else f"{c}*{zk}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self})"


def _poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic Euclidean gcd over the scalar field."""
    while b:
        _, r = divmod(a, b)
        a, b = b, r
    if a and a.coeffs[-1] != _S1:
        a = a.scale(a.coeffs[-1].invert())
    return a


class UniRat:
    """Rational function num/den over Scalar, kept reduced with a monic denominator.

    Unlike the multivariate fractions, univariate gcds are cheap, and reducing
    here keeps repeated derivatives (denominator squaring) from blowing up.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = None):
        if den is None:
            den = UniPoly.one()
        if not den:
            raise ZeroDivisionError("zero denominator in UniRat")
        if not num:
            den = UniPoly.one()
        else:
            if den.degree() > 0 and num.degree() > 0:
                g = _poly_gcd(num, den)
                if g.degree() > 0:
                    num, rn = divmod(num, g)
                    den, rd = divmod(den, g)
                    assert not rn and not rd, "gcd must divide both parts"
            if den.coeffs[-1] != _S1:
                inv = den.coeffs[-1].invert()
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "UniRat":
        return cls(p)

    @classmethod
    def const(cls, c) -> "UniRat":
        return cls(UniPoly.const(c))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            other = UniRat.from_poly(other)
        if not isinstance(other, UniRat):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return UniRat(self.num + other.num, self.den)
        return UniRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UniRat(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return UniRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("UniRat division by zero")
        return UniRat(self.num * other.den, self.den * other.num)

    def derivative(self) -> "UniRat":
        if self.den == UniPoly.one():
            return UniRat(self.num.derivative())
        return UniRat(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, c) -> Scalar:
        d = self.den(c)
        if not d:
            raise ZeroDivisionError(f"pole at z = {c}")
        return self.num(c) / d

    def __str__(self):
        if self.den == UniPoly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"UniRat({self})"


def _coerce(x):
    if isinstance(x, UniRat):
        return x
    if isinstance(x, UniPoly):
        return UniRat.from_poly(x)
    if isinstance(x, (int, Fraction, Scalar)):
        return UniRat.const(x)
    return NotImplemented


def poly_from_fractions(values: Sequence) -> UniPoly:
    """Convenience builder: [1, 0, Fraction(1,2)] -> 1 + (1/2) z^2."""
    return UniPoly(values)


def specialize(x: DiffRat, polys: Sequence[UniPoly]) -> UniRat:
    """Apply the substitution t_i -> r_i(z) to a differential fraction.

    Every jet t_i^(j) maps to the j-th z-derivative of r_i, which makes the
    substitution commute with the derivation.  A denominator collapsing to
    the zero polynomial signals an invalid specialization.
    """
    polys = [p if isinstance(p, UniPoly) else UniPoly(p) for p in polys]
    cache: Dict[Tuple[int, int], UniPoly] = {}

    def image(v: JetVar) -> UniPoly:
        if v.index > len(polys):
            raise SpecializationError(
                f"no image for t{v.index}: only {len(polys)} polynomials given"
            )
        key = (v.index, v.order)
        if key not in cache:
            p = polys[v.index - 1]
            for _ in range(v.order):
                p = p.derivative()
            cache[key] = p
        return cache[key]

    def poly_image(p) -> UniPoly:
        out = UniPoly.zero()
        for mono, coeff in p.terms.items():
            term = UniPoly.const(coeff)
            for v, e in mono:
                term = term * image(v) ** e
            out = out + term
        return out

    num = poly_image(x.num)
    den = poly_image(x.den)
    if not den:
        raise SpecializationError("denominator specializes to the zero polynomial")
    return UniRat(num, den)
