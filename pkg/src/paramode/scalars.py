"""Exact coefficient arithmetic: rationals and the quadratic extension Q(sqrt2).

A Scalar is a + b*sqrt2 with a, b rational.  The sqrt2 part is only ever
nonzero for the 7x7 representation of type G2; everything else lives in the
plain rational subfield and takes the fast paths below.
"""

from __future__ import annotations

from fractions import Fraction

FIELD_Q = "Q"
FIELD_QSQRT2 = "Qsqrt2"

_F0 = Fraction(0)
_F1 = Fraction(1)


class Scalar:
    """Element a + b*sqrt2 of Q or Q(sqrt2), immutable and canonical.

    Fractions keep both parts in lowest terms with canonical sign, so two
    Scalars are equal iff they are structurally equal.  The field tag records
    whether the value is being used as a plain rational; mixed arithmetic
    promotes to Q(sqrt2) silently, demotion is explicit via `demote`.
    """

    __slots__ = ("a", "b", "field")

    def __init__(self, a=0, b=0, field=None):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if field is None:
            field = FIELD_Q if not b else FIELD_QSQRT2
        elif field == FIELD_Q and b:
            raise ValueError("field tag Q requires a zero sqrt2 part")
        elif field not in (FIELD_Q, FIELD_QSQRT2):
            raise ValueError(f"unknown field tag {field!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def rational(cls, p, q=1) -> "Scalar":
        """Build p/q in Q; q = 0 signals malformed input."""
        return cls(Fraction(p, q))

    @classmethod
    def sqrt2(cls, coeff=1) -> "Scalar":
        return cls(0, Fraction(coeff), FIELD_QSQRT2)

    @classmethod
    def zero(cls) -> "Scalar":
        return _ZERO

    @classmethod
    def one(cls) -> "Scalar":
        return _ONE

    # arithmetic ------------------------------------------------------

    def _tag(self, other: "Scalar") -> str:
        if self.field == FIELD_QSQRT2 or other.field == FIELD_QSQRT2:
            return FIELD_QSQRT2
        return FIELD_Q

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b, self._tag(other))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b, self._tag(other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.b and not other.b:
            return Scalar(self.a * other.a, _F0, self._tag(other))
        return Scalar(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + other.a * self.b,
            FIELD_QSQRT2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.invert()

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.field)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert(self) -> "Scalar":
        """Multiplicative inverse; for a + b*sqrt2 this is (a - b*sqrt2)/(a^2 - 2b^2)."""
        if not self:
            raise ZeroDivisionError("Scalar division by zero")
        if not self.b:
            return Scalar(1 / self.a, _F0, self.field)
        norm = self.a * self.a - 2 * self.b * self.b
        # a^2 = 2 b^2 with a, b rational forces a = b = 0 (sqrt2 is irrational).
        assert norm != 0, "unreachable: nonzero element with zero norm in Q(sqrt2)"
        return Scalar(self.a / norm, -self.b / norm, FIELD_QSQRT2)

    # structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Sign of the real value a + b*sqrt2."""
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        if not self.a:
            return 1 if self.b > 0 else -1
        norm = self.a * self.a - 2 * self.b * self.b
        if norm > 0:
            return 1 if self.a > 0 else -1
        return 1 if self.b > 0 else -1

    def is_rational(self) -> bool:
        return not self.b

    def demote(self) -> "Scalar":
        """Explicit demotion into Q; requires zero sqrt2 part."""
        if self.b:
            raise ValueError(f"cannot demote {self} to Q")
        return Scalar(self.a, _F0, FIELD_Q)

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    # text form -------------------------------------------------------

    def __str__(self):
        if not self.b:
            return _frac_str(self.a)
        if not self.a:
            head = ""
        else:
            head = _frac_str(self.a)
        if self.b < 0:
            sep = "-"
            mag = -self.b
        else:
            sep = "+" if head else ""
            mag = self.b
        tail = "sqrt2" if mag == 1 else f"{_frac_str(mag)}*sqrt2"
        return f"{head}{sep}{tail}" if head or sep == "-" else tail

    def __repr__(self):
        return f"Scalar({self})"

    def is_compound(self) -> bool:
        """True when the text form needs parentheses inside a product."""
        return bool(self.a) and bool(self.b)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return NotImplemented


def normalize(s: Scalar) -> Scalar:
    """Canonical lowest-terms representative (idempotent)."""
    return Scalar(s.a, s.b, s.field)


def invert(s: Scalar) -> Scalar:
    return s.invert()


_ZERO = Scalar(0)
_ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
