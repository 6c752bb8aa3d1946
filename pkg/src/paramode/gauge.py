"""Gauge reduction of connection matrices onto the complementary plane.

A matrix A in A_0^+ + b^- (or the mirrored A_0^- + b^+) is conjugated by a
product of root group elements exp(rho X) until everything outside A_0 lives
on the l complementary root spaces.  Each step kills the coordinate of one
W basis element; the elimination parameter is found generically by probing
the coordinate at rho = 0 and rho = 1 and solving the affine equation, which
also exercises the linearity the construction promises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .chevalley import ChevalleyRep, _sp_to_dense, _w_basis_sparse, _complement_vectors
from .jets import DiffRat, diff_equals
from .roots import Root
from .scalars import Scalar

_ZERO = DiffRat.zero()
_ONE = DiffRat.one()


def mat_derive(m: List[List[DiffRat]]) -> List[List[DiffRat]]:
    return [[e.derive() for e in row] for row in m]


def diff_identity(n: int) -> List[List[DiffRat]]:
    return linalg.identity(n, _ZERO, _ONE)


def exp_root(rho: DiffRat, x: List[List[Scalar]]) -> List[List[DiffRat]]:
    """exp(rho x) = sum rho^j / j! x^j for nilpotent x.

    The sum is finite because x^n = 0 in the ambient dimension; a
    non-nilpotent x is rejected.
    """
    n = len(x)
    if not isinstance(rho, DiffRat):
        rho = DiffRat.const(rho)
    out = diff_identity(n)
    power = linalg.identity(n, Scalar.zero(), Scalar.one())
    rho_j = _ONE
    fact = 1
    for j in range(1, n + 1):
        power = linalg.mat_mul(power, x)
        if not any(any(e for e in row) for row in power):
            return out
        if j == n:
            raise ValueError("exp_root requires a nilpotent matrix")
        rho_j = rho_j * rho
        fact *= j
        coeff = rho_j * DiffRat.const(Fraction(1, fact))
        for i in range(n):
            for k in range(n):
                if power[i][k]:
                    out[i][k] = out[i][k] + coeff * DiffRat.from_scalar(power[i][k])
    return out


def log_derivative(u: List[List[DiffRat]]) -> List[List[DiffRat]]:
    """d(u) u^{-1}; raises ValueError when u is singular."""
    u_inv = linalg.inverse(u, _ZERO, _ONE)
    return linalg.mat_mul(mat_derive(u), u_inv)


def gauge_apply(u, a: List[List[DiffRat]],
                u_inv: Optional[List[List[DiffRat]]] = None) -> List[List[DiffRat]]:
    """u a u^{-1} + d(u) u^{-1} for u a matrix or a GaugeElement."""
    if isinstance(u, GaugeElement):
        if u_inv is None:
            u_inv = u.inverse_matrix()
        u = u.matrix
    if len(u) != len(a):
        raise ValueError("dimension mismatch in gauge_apply")
    if u_inv is None:
        u_inv = linalg.inverse(u, _ZERO, _ONE)
    conj = linalg.mat_mul(linalg.mat_mul(u, a), u_inv)
    return linalg.mat_add(conj, linalg.mat_mul(mat_derive(u), u_inv))


@dataclass
class GaugeElement:
    """Unipotent gauge transformation with its root group factorization.

    `matrix` equals the matrix product of exp(rho X_beta) over `factors` in
    list order (so the rightmost factor acts first on a connection matrix).
    """

    matrix: List[List[DiffRat]]
    factors: List[Tuple[Root, DiffRat]]

    @classmethod
    def identity(cls, n: int) -> "GaugeElement":
        return cls(diff_identity(n), [])

    def inverse_matrix(self) -> List[List[DiffRat]]:
        return linalg.inverse(self.matrix, _ZERO, _ONE)

    def factor_matrices(self, rep: ChevalleyRep) -> List[List[List[DiffRat]]]:
        return [exp_root(rho, rep.root_vector(beta)) for beta, rho in self.factors]


class PlaneError(ValueError):
    """The input matrix does not lie in A_0 + b of the chosen polarity."""


class _PlaneCoordinates:
    """Exact coordinates of b^+/b^- valued matrices in the (W, X_gamma) basis."""

    def __init__(self, rep: ChevalleyRep, complement: Sequence[Root], polarity: str):
        ws = _w_basis_sparse(rep, polarity)
        self.sources = [src for src, _ in ws]
        vecs = [w for _, w in ws] + _complement_vectors(rep, complement, polarity)
        self.r = len(ws)
        self.support = sorted({k for v in vecs for k in v})
        self.support_set = set(self.support)
        pos = {k: idx for idx, k in enumerate(self.support)}
        self.columns = [[_ZERO] * len(vecs) for _ in self.support]
        for col, v in enumerate(vecs):
            for k, val in v.items():
                self.columns[pos[k]][col] = DiffRat.from_scalar(val)
        self.pos = pos
        self.ncols = len(vecs)

    def coordinates(self, delta: List[List[DiffRat]]) -> List[DiffRat]:
        rhs = [[_ZERO] for _ in self.support]
        for i, row in enumerate(delta):
            for j, v in enumerate(row):
                if v:
                    if (i, j) not in self.support_set:
                        raise PlaneError(
                            f"entry ({i + 1},{j + 1}) lies outside the plane"
                        )
                    rhs[self.pos[(i, j)]][0] = v
        sol, _ = linalg.solve_unique(self.columns, rhs, _ZERO)
        if sol is None:
            raise PlaneError("matrix is not in A_0 + b of the chosen polarity")
        return [sol[i][0] for i in range(self.ncols)]


def reduce_to_complement(
    a: List[List[DiffRat]],
    rep: ChevalleyRep,
    complement: Sequence[Root],
    polarity: str = "flipped",
) -> Tuple[GaugeElement, List[List[DiffRat]]]:
    """Gauge A into A_0 + (complementary root spaces), one W coordinate at a time.

    Returns (u, B) with B = gauge_apply(u, A) supported, outside A_0, only on
    the complementary root spaces.  W basis indices are processed in the
    module order (source height ascending, lex tie-break); at step k a single
    root group factor eliminates the W_k coordinate.
    """
    from .chevalley import complement_rank_test

    if not complement_rank_test(rep, list(complement), polarity):
        raise PlaneError("complement fails the direct-sum rank test")
    n = rep.n
    if len(a) != n:
        raise ValueError(f"matrix size {len(a)} does not match the representation ({n})")
    plane = _PlaneCoordinates(rep, complement, polarity)
    a0 = _sp_to_dense(
        rep.a0_plus_sparse() if polarity == "flipped" else rep.a0_minus_sparse(), n
    )
    a0 = [[DiffRat.from_scalar(e) for e in row] for row in a0]
    current = a
    coords = plane.coordinates(linalg.mat_sub(current, a0))
    u_total = diff_identity(n)
    factors_applied: List[Tuple[Root, DiffRat]] = []
    for k, src in enumerate(plane.sources):
        w_k = coords[k]
        if not w_k:
            continue
        beta = src if polarity == "standard" else -src
        x = rep.root_vector(beta)
        probe = gauge_apply(exp_root(_ONE, x), current, exp_root(-_ONE, x))
        f1 = plane.coordinates(linalg.mat_sub(probe, a0))[k]
        slope = f1 - w_k
        if not slope:
            raise AssertionError(f"elimination coordinate for {beta} is constant in rho")
        rho = -(w_k / slope)
        u_k = exp_root(rho, x)
        current = gauge_apply(u_k, current, exp_root(-rho, x))
        coords = plane.coordinates(linalg.mat_sub(current, a0))
        if coords[k]:
            raise AssertionError(f"W coordinate for {beta} survived its elimination step")
        u_total = linalg.mat_mul(u_k, u_total)
        factors_applied.append((beta, rho))
    for k in range(plane.r):
        if coords[k]:
            raise AssertionError("a W coordinate is nonzero after the reduction")
    return GaugeElement(u_total, list(reversed(factors_applied))), current


def matrices_equal(x: List[List[DiffRat]], y: List[List[DiffRat]]) -> bool:
    """Entrywise semantic equality of DiffRat matrices."""
    if len(x) != len(y):
        return False
    for rx, ry in zip(x, y):
        if len(rx) != len(ry):
            return False
        for a, b in zip(rx, ry):
            if not diff_equals(a, b):
                return False
    return True
