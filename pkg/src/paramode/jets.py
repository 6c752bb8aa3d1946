"""Differential polynomials and fractions in jet variables.

A jet variable t_i^(j) stands for the j-th derivative of the differential
indeterminate t_i; the derivation simply bumps j, so jets are created on
demand and the ring C{t_1, ..., t_l} is realized as exact multivariate
polynomials over Scalar with fractions on top.

Canonical text forms: jets print as ``t1``, ``t1'``, ``t1''``, ``t1^(7)``;
a fraction prints as ``num / den`` in the fixed graded-lex term order, which
is what golden files compare against.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from .scalars import Scalar

_S0 = Scalar.zero()
_S1 = Scalar.one()


class JetVar(NamedTuple):
    """The j-th derivative of the i-th differential indeterminate."""

    index: int  # i >= 1
    order: int  # j >= 0

    def key(self) -> Tuple[int, int]:
        # Total order on jets: (order, index) lexicographic.
        return (self.order, self.index)

    def derivative(self) -> "JetVar":
        return JetVar(self.index, self.order + 1)

    def __str__(self):
        if self.order <= 2:
            return f"t{self.index}" + "'" * self.order
        return f"t{self.index}^({self.order})"


def jet(index: int, order: int = 0) -> JetVar:
    if index < 1 or order < 0:
        raise ValueError(f"invalid jet t{index}^({order})")
    return JetVar(index, order)


# A monomial is a tuple of (JetVar, exponent) pairs sorted by JetVar.key().
Monomial = Tuple[Tuple[JetVar, int], ...]

_EMPTY: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda p: p[0].key()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_sort_key(m: Monomial):
    # Ascending in this key == descending graded-lex order.
    return (-_mono_degree(m), tuple((v.key(), -e) for v, e in m))


def _mono_str(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


class DiffPoly:
    """Sparse multivariate polynomial in jet variables over Scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Scalar] = None):
        self.terms = terms if terms is not None else {}

    # construction ----------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffPoly":
        return cls({})

    @classmethod
    def one(cls) -> "DiffPoly":
        return cls({_EMPTY: _S1})

    @classmethod
    def const(cls, c) -> "DiffPoly":
        c = c if isinstance(c, Scalar) else Scalar(c)
        return cls({_EMPTY: c} if c else {})

    @classmethod
    def var(cls, v: JetVar) -> "DiffPoly":
        return cls({((v, 1),): _S1})

    @classmethod
    def jet(cls, index: int, order: int = 0) -> "DiffPoly":
        return cls.var(jet(index, order))

    # ring operations -------------------------------------------------

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            if s is None:
                res[m] = c
            else:
                s = s + c
                if s:
                    res[m] = s
                else:
                    del res[m]
        return DiffPoly(res)

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            if s is None:
                res[m] = -c
            else:
                s = s - c
                if s:
                    res[m] = s
                else:
                    del res[m]
        return DiffPoly(res)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "DiffPoly") -> "DiffPoly":
        if not self.terms or not other.terms:
            return DiffPoly()
        if len(other.terms) < len(self.terms):
            self, other = other, self
        res: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = res.get(m)
                if s is None:
                    if c:
                        res[m] = c
                else:
                    s = s + c
                    if s:
                        res[m] = s
                    else:
                        del res[m]
        return DiffPoly(res)

    def scale(self, c: Scalar) -> "DiffPoly":
        if not c:
            return DiffPoly()
        return DiffPoly({m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "DiffPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = DiffPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # differential structure -------------------------------------------

    def derive(self) -> "DiffPoly":
        """Apply the derivation: jets bump order, Leibniz on monomials."""
        res: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            for k, (v, e) in enumerate(m):
                rest = list(m)
                if e == 1:
                    del rest[k]
                else:
                    rest[k] = (v, e - 1)
                mono = _mono_mul(tuple(rest), ((v.derivative(), 1),))
                coeff = c * e
                s = res.get(mono)
                if s is None:
                    res[mono] = coeff
                else:
                    s = s + coeff
                    if s:
                        res[mono] = s
                    else:
                        del res[mono]
        return DiffPoly(res)

    # evaluation --------------------------------------------------------

    def evaluate(self, point: Dict[JetVar, Scalar]) -> Scalar:
        total = _S0
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in point:
                    raise KeyError(f"jet {v} not covered by the evaluation point")
                val = val * point[v] ** e
            total = total + val
        return total

    def max_index(self) -> int:
        mx = 0
        for m in self.terms:
            for v, _ in m:
                mx = max(mx, v.index)
        return mx

    def jets(self) -> List[JetVar]:
        seen = set()
        for m in self.terms:
            for v, _ in m:
                seen.add(v)
        return sorted(seen, key=JetVar.key)

    # canonicalization ---------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of all rational components."""
        num_g = 0
        den_l = 1
        from math import gcd

        for c in self.terms.values():
            for part in (c.a, c.b):
                if part:
                    num_g = gcd(num_g, abs(part.numerator))
                    den_l = den_l * part.denominator // gcd(den_l, part.denominator)
        if num_g == 0:
            return Fraction(1)
        return Fraction(num_g, den_l)

    def leading_coeff(self) -> Scalar:
        if not self.terms:
            return _S0
        m = min(self.terms, key=_mono_sort_key)
        return self.terms[m]

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_degree(m) for m in self.terms)

    # text ---------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[m]
            mono = _mono_str(m)
            if not mono:
                body = str(c)
                neg = c.sign() < 0 and not c.is_compound()
                if neg:
                    body = str(-c)
            else:
                neg = False
                if c.is_compound():
                    body = f"({c})*{mono}"
                else:
                    if c.sign() < 0:
                        neg = True
                        c = -c
                    body = mono if c == _S1 else f"{c}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"DiffPoly({self})"


_P1 = DiffPoly.one()


class DiffRat:
    """Fraction of differential polynomials.

    Stored with scalar content stripped from both parts and the denominator
    sign-normalized; no multivariate gcd is taken, so equality is semantic
    (cross multiplication) rather than structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: DiffPoly, den: DiffPoly = None, canonical=False):
        if den is None:
            den = _P1
        if not den:
            raise ZeroDivisionError("zero denominator in DiffRat")
        if not canonical:
            if not num:
                den = _P1
            else:
                # Make the denominator monic in the term order, scaling the
                # numerator by the same factor; constant denominators are
                # absorbed entirely (a monic constant is exactly 1).
                lc = den.leading_coeff()
                if not (lc == _S1):
                    inv = lc.invert()
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    # construction ----------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffRat":
        return cls(DiffPoly.zero(), _P1, canonical=True)

    @classmethod
    def one(cls) -> "DiffRat":
        return cls(DiffPoly.one(), _P1, canonical=True)

    @classmethod
    def const(cls, c) -> "DiffRat":
        return cls(DiffPoly.const(c), _P1, canonical=True)

    @classmethod
    def from_scalar(cls, c: Scalar) -> "DiffRat":
        return cls(DiffPoly.const(c), _P1, canonical=True)

    @classmethod
    def jet(cls, index: int, order: int = 0) -> "DiffRat":
        return cls(DiffPoly.jet(index, order), _P1, canonical=True)

    @classmethod
    def from_poly(cls, p: DiffPoly) -> "DiffRat":
        return cls(p)

    def is_polynomial(self) -> bool:
        return self.den == _P1

    # arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return DiffRat(self.num + other.num, self.den)
        return DiffRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return DiffRat(self.num - other.num, self.den)
        return DiffRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("DiffRat division by zero")
        return DiffRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return DiffRat(-self.num, self.den, canonical=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return diff_equals(self, other)

    __hash__ = None

    # differential structure -------------------------------------------

    def derive(self) -> "DiffRat":
        dn = self.num.derive()
        if self.den == _P1:
            return DiffRat(dn, _P1)
        dd = self.den.derive()
        return DiffRat(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: Dict[JetVar, Scalar]) -> Scalar:
        den = self.den.evaluate(point)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / den

    def specialize(self, polys) -> "unipoly.UniRat":
        """Substitute t_i -> r_i(z), jets -> derivatives of r_i."""
        from . import unipoly

        return unipoly.specialize(self, polys)

    # text ---------------------------------------------------------------

    def __str__(self):
        if self.den == _P1:
            return str(self.num)
        return f"{_wrap_num(self.num)} / {_wrap_den(self.den)}"

    def __repr__(self):
        return f"DiffRat({self})"


def _wrap_num(p: DiffPoly) -> str:
    s = str(p)
    if len(p.terms) > 1:
        return f"({s})"
    # a lone compound scalar like -1/4+3/4*sqrt2 carries a top-level sign
    ((mono, coeff),) = p.terms.items()
    if not mono and coeff.is_compound():
        return f"({s})"
    return s


def _wrap_den(p: DiffPoly) -> str:
    # '/' and '*' parse left-associatively, so the denominator must stay one
    # factor: parenthesize everything except a bare jet.
    if len(p.terms) == 1:
        (mono, coeff), = p.terms.items()
        if coeff == _S1 and len(mono) == 1 and mono[0][1] == 1:
            return str(p)
    return f"({p})"


def _coerce_rat(x):
    if isinstance(x, DiffRat):
        return x
    if isinstance(x, DiffPoly):
        return DiffRat.from_poly(x)
    if isinstance(x, (int, Fraction, Scalar)):
        return DiffRat.const(x)
    return NotImplemented


def diff_equals(a: DiffRat, b: DiffRat) -> bool:
    """Exact semantic equality by cross multiplication."""
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def derive(x):
    """Derivation on DiffPoly / DiffRat (additive, Leibniz, quotient rule)."""
    return x.derive()


def jet_evaluate(x: DiffRat, point: Dict[JetVar, Scalar]) -> Scalar:
    return x.evaluate(point)


# ---------------------------------------------------------------------------
# Parsing of the canonical text form (used by the CLI to read matrices back).

class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self):
        ch = self.peek()
        if ch is not None:
            self.pos += 1
        return ch

    def number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected digits at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def match_word(self, word: str) -> bool:
        self.peek()
        if self.text.startswith(word, self.pos):
            self.pos += len(word)
            return True
        return False


def parse_diffrat(text: str) -> DiffRat:
    """Parse the canonical expression grammar into a DiffRat.

    Grammar: sums/differences of products/quotients of factors; factors are
    integers, ``sqrt2``, jets (``t1``, ``t2''``, ``t1^(4)``), parenthesized
    expressions, with ``^`` + digits as exponent.
    """
    tok = _Tokenizer(text)
    value = _parse_sum(tok)
    if tok.peek() is not None:
        raise ValueError(f"trailing input at position {tok.pos} in {text!r}")
    return value


def parse_scalar(text: str) -> Scalar:
    value = parse_diffrat(text)
    if value.num.jets() or value.den.jets():
        raise ValueError(f"{text!r} is not a scalar")
    num = value.num.terms.get(_EMPTY, _S0)
    den = value.den.terms.get(_EMPTY, _S0)
    return num / den


def _parse_sum(tok: _Tokenizer) -> DiffRat:
    ch = tok.peek()
    negate = False
    if ch in ("+", "-"):
        tok.take()
        negate = ch == "-"
    value = _parse_product(tok)
    if negate:
        value = -value
    while True:
        ch = tok.peek()
        if ch == "+":
            tok.take()
            value = value + _parse_product(tok)
        elif ch == "-":
            tok.take()
            value = value - _parse_product(tok)
        else:
            return value


def _parse_product(tok: _Tokenizer) -> DiffRat:
    value = _parse_factor(tok)
    while True:
        ch = tok.peek()
        if ch == "*":
            tok.take()
            value = value * _parse_factor(tok)
        elif ch == "/":
            tok.take()
            value = value / _parse_factor(tok)
        else:
            return value


def _parse_factor(tok: _Tokenizer) -> DiffRat:
    ch = tok.peek()
    if ch is None:
        raise ValueError("unexpected end of input")
    if ch == "(":
        tok.take()
        value = _parse_sum(tok)
        if tok.take() != ")":
            raise ValueError("missing closing parenthesis")
    elif ch == "-":
        tok.take()
        return -_parse_factor(tok)
    elif ch.isdigit():
        value = DiffRat.const(tok.number())
    elif tok.match_word("sqrt2"):
        value = DiffRat.from_scalar(Scalar.sqrt2())
    elif ch == "t":
        tok.take()
        index = tok.number()
        order = 0
        while tok.peek() == "'":
            tok.take()
            order += 1
        if order == 0 and tok.peek() == "^":
            save = tok.pos
            tok.take()
            if tok.peek() == "(":
                tok.take()
                order = tok.number()
                if tok.take() != ")":
                    raise ValueError("malformed jet order")
            else:
                tok.pos = save
        value = DiffRat.jet(index, order)
    else:
        raise ValueError(f"unexpected character {ch!r} at position {tok.pos}")
    if tok.peek() == "^":
        save = tok.pos
        tok.take()
        nxt = tok.peek()
        if nxt is not None and nxt.isdigit():
            value = _pow_rat(value, tok.number())
        else:
            tok.pos = save
    return value


def _pow_rat(value: DiffRat, n: int) -> DiffRat:
    out = DiffRat.one()
    for _ in range(n):
        out = out * value
    return out
