"""Explicit Chevalley-basis matrix representations of the five families.

sl_{l+1}, sp_{2l}, so_{2l+1}, so_{2l} and the 7x7 realization of g2 are built
from their classical matrix tables, with the block row/column labelings
(1..l, -l..-1) and (1..l, 0, -l..-1) resolved to absolute indices.  The
bracket is the literal matrix commutator, so there are no abstract structure
constants anywhere: the matrices themselves are the ground truth, and the
builder cross-checks the eigenvalue relations [H_i, X_a] = a(H_i) X_a and
[H_0, X_a] = ht(a) X_a for every stored root vector.

One sign subtlety in type B: with the published table (X_{-eps_h} =
-2 E_{-h,0} - E_{0,h}) the odd orthogonal parameter plane must carry
coefficient -t_1/2 on the short complementary root for the system to expand
into the classical scalar operator; `parameter_matrix` does exactly that.
Rescaling the stored root vector instead would be wrong: A_0^- enters the
Kostant decompositions, which need the table's principal nilpotent.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .jets import DiffRat
from .roots import Root, RootSystem, build_root_system, normalize_kind
from .scalars import FIELD_Q, FIELD_QSQRT2, Scalar

_S0 = Scalar.zero()
_S1 = Scalar.one()
_SQRT2 = Scalar.sqrt2()

Sparse = Dict[Tuple[int, int], Scalar]


# --- sparse helpers (internal) --------------------------------------------

def _E(i: int, j: int, c=1) -> Sparse:
    return {(i, j): c if isinstance(c, Scalar) else Scalar(c)}


def _sp_add(*mats: Sparse) -> Sparse:
    out: Sparse = {}
    for m in mats:
        for k, v in m.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _sp_scale(c: Scalar, m: Sparse) -> Sparse:
    if not c:
        return {}
    return {k: c * v for k, v in m.items()}


def _sp_neg(m: Sparse) -> Sparse:
    return {k: -v for k, v in m.items()}


def _sp_transpose(m: Sparse) -> Sparse:
    return {(j, i): v for (i, j), v in m.items()}


def _sp_mul(x: Sparse, y: Sparse) -> Sparse:
    by_row: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (i, j), v in y.items():
        by_row.setdefault(i, []).append((j, v))
    out: Sparse = {}
    for (i, k), a in x.items():
        for j, b in by_row.get(k, ()):
            key = (i, j)
            s = out.get(key)
            t = a * b
            s = t if s is None else s + t
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _sp_bracket(x: Sparse, y: Sparse) -> Sparse:
    return _sp_add(_sp_mul(x, y), _sp_neg(_sp_mul(y, x)))


def _sp_trace(m: Sparse) -> Scalar:
    t = _S0
    for (i, j), v in m.items():
        if i == j:
            t = t + v
    return t


def _sp_to_dense(m: Sparse, n: int) -> List[List[Scalar]]:
    out = [[_S0] * n for _ in range(n)]
    for (i, j), v in m.items():
        out[i][j] = v
    return out


def _sp_to_diffrat(m: Sparse, n: int) -> List[List[DiffRat]]:
    zero = DiffRat.zero()
    out = [[zero] * n for _ in range(n)]
    for (i, j), v in m.items():
        out[i][j] = DiffRat.from_scalar(v)
    return out


def _span_solve(targets: Sequence[Sparse], basis: Sequence[Sparse]) -> Optional[List[List[Scalar]]]:
    """Coordinates of each target in span(basis) over Scalar, or None.

    Works on the union of supports, so large ambient matrices stay cheap.
    """
    support = sorted({k for b in basis for k in b} | {k for t in targets for k in t})
    pos = {k: idx for idx, k in enumerate(support)}
    a = [[_S0] * len(basis) for _ in support]
    for col, b in enumerate(basis):
        for k, v in b.items():
            a[pos[k]][col] = v
    rhs = [[_S0] * len(targets) for _ in support]
    for col, t in enumerate(targets):
        for k, v in t.items():
            rhs[pos[k]][col] = v
    sol = linalg.solve(a, rhs, _S0)
    if sol is None:
        return None
    return [[sol[i][j] for i in range(len(basis))] for j in range(len(targets))]


def _vectors_rank(mats: Sequence[Sparse]) -> int:
    support = sorted({k for m in mats for k in m})
    pos = {k: idx for idx, k in enumerate(support)}
    rows = []
    for m in mats:
        row = [_S0] * len(support)
        for k, v in m.items():
            row[pos[k]] = v
        rows.append(row)
    return linalg.rank(rows)


# --- representation tables -------------------------------------------------

def _index_maps(kind: str, l: int):
    """Map the block labels used by the classical tables to absolute indices."""
    if kind == "A":
        n = l + 1
        return n, lambda k: k - 1
    if kind in ("C", "D"):
        n = 2 * l

        def conv(k: int) -> int:
            return k - 1 if k > 0 else 2 * l + k
        return n, conv
    if kind == "B":
        n = 2 * l + 1

        def conv(k: int) -> int:
            if k > 0:
                return k - 1
            if k == 0:
                return l
            return 2 * l + 1 + k
        return n, conv
    raise ValueError(kind)


def _build_tables(kind: str, l: int):
    """Return (n, cartan list, {coords: sparse matrix}) for the given type."""
    vecs: Dict[Tuple[int, ...], Sparse] = {}

    def unit(lo: int, hi: int, value: int = 1) -> Tuple[int, ...]:
        v = [0] * l
        for k in range(lo, hi + 1):
            v[k - 1] += value
        return tuple(v)

    if kind == "G2":
        n = 7
        E = _E
        r2 = _SQRT2
        cartan = [
            _sp_add(_E(1, 1, -1), _E(4, 4), _E(2, 2, 2), _E(5, 5, -2), _E(3, 3, -1), _E(6, 6)),
            _sp_add(_E(2, 2), _E(5, 5, -1), _E(3, 3, -1), _E(6, 6)),
        ]
        pos = {
            (1, 0): _sp_add(_sp_scale(r2, _sp_add(E(0, 2), _sp_neg(E(5, 0)))), E(1, 6), _sp_neg(E(3, 4))),
            (0, 1): _sp_add(E(2, 3), _sp_neg(E(6, 5))),
            (1, 1): _sp_add(_sp_scale(r2, _sp_add(E(0, 3), _sp_neg(E(6, 0)))), _sp_neg(E(1, 5)), E(2, 4)),
            (2, 1): _sp_add(_sp_scale(r2, _sp_add(E(1, 0), _sp_neg(E(0, 4)))), _sp_neg(E(6, 2)), E(5, 3)),
            (3, 1): _sp_add(E(1, 2), _sp_neg(E(5, 4))),
            (3, 2): _sp_add(E(1, 3), _sp_neg(E(6, 4))),
        }
        for coords, mat in pos.items():
            vecs[coords] = mat
            vecs[tuple(-c for c in coords)] = _sp_transpose(mat)
        return n, cartan, vecs

    n, c = _index_maps(kind, l)

    def E(i: int, j: int, coeff=1) -> Sparse:
        return _E(c(i), c(j), coeff)

    if kind == "A":
        cartan = [_sp_add(E(i, i), E(i + 1, i + 1, -1)) for i in range(1, l + 1)]
        for i in range(1, l + 2):
            for j in range(1, l + 2):
                if i == j:
                    continue
                if i < j:
                    vecs[unit(i, j - 1)] = E(i, j)
                else:
                    vecs[tuple(-x for x in unit(j, i - 1))] = E(i, j)
        return n, cartan, vecs

    cartan = [_sp_add(E(i, i), E(-i, -i, -1)) for i in range(1, l + 1)]

    if kind == "C":
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                coords = unit(i, j - 1)
                vecs[coords] = _sp_add(E(i, j), E(-j, -i, -1))
                vecs[tuple(-x for x in coords)] = _sp_add(E(j, i, -1), E(-i, -j))
                plus = [x + y for x, y in zip(unit(i, j - 1), unit(j, l - 1, 2))]
                plus[l - 1] += 1
                vecs[tuple(plus)] = _sp_add(E(i, -j), E(j, -i))
                vecs[tuple(-x for x in plus)] = _sp_add(E(-i, j, -1), E(-j, i, -1))
        for i in range(1, l + 1):
            v = list(unit(i, l - 1, 2))
            v[l - 1] += 1
            vecs[tuple(v)] = E(i, -i)
            vecs[tuple(-x for x in v)] = E(-i, i, -1)
        return n, cartan, vecs

    if kind == "B":
        for h in range(1, l + 1):
            coords = unit(h, l)
            vecs[coords] = _sp_add(E(h, 0, 2), E(0, -h))
            vecs[tuple(-x for x in coords)] = _sp_add(E(-h, 0, -2), E(0, h, -1))
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                coords = unit(i, j - 1)
                vecs[coords] = _sp_add(E(i, j), E(-j, -i, -1))
                vecs[tuple(-x for x in coords)] = _sp_add(E(j, i, -1), E(-i, -j))
                plus = [x + y for x, y in zip(unit(i, j - 1), unit(j, l, 2))]
                vecs[tuple(plus)] = _sp_add(E(i, -j), E(j, -i, -1))
                vecs[tuple(-x for x in plus)] = _sp_add(E(-j, i, -1), E(-i, j))
        return n, cartan, vecs

    if kind == "D":
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                coords = unit(i, j - 1)
                vecs[coords] = _sp_add(E(i, j), E(-j, -i, -1))
                vecs[tuple(-x for x in coords)] = _sp_add(E(j, i, -1), E(-i, -j))
                if j < l:
                    plus = [x + y for x, y in zip(unit(i, j - 1), unit(j, l - 2, 2))]
                    plus[l - 2] += 1
                    plus[l - 1] += 1
                else:
                    plus = list(unit(i, l - 2))
                    plus[l - 1] += 1
                vecs[tuple(plus)] = _sp_add(E(i, -j), E(j, -i, -1))
                vecs[tuple(-x for x in plus)] = _sp_add(E(-j, i, -1), E(-i, j))
        return n, cartan, vecs

    raise ValueError(kind)


# --- the representation object ---------------------------------------------

class ChevalleyRep:
    """Concrete Cartan decomposition of one of the five Lie algebra families."""

    def __init__(self, kind: str, rank: int):
        kind = normalize_kind(kind)
        self.kind = kind
        self.rank = rank
        self.rs: RootSystem = build_root_system(kind, rank)
        n, cartan_sp, table = _build_tables(kind, rank)
        self.n = n
        self.scalar_field = FIELD_QSQRT2 if kind == "G2" else FIELD_Q
        self._cartan_sp = cartan_sp
        self._rootvec_sp: Dict[Root, Sparse] = {}
        for coords, mat in table.items():
            self._rootvec_sp[self.rs.root(coords)] = mat
        if len(self._rootvec_sp) != len(self.rs.all_roots()):
            raise AssertionError(
                f"{kind}{rank}: built {len(self._rootvec_sp)} root vectors, "
                f"expected {len(self.rs.all_roots())}"
            )
        self._alpha_on_h = self._eigenvalue_table()
        self._h0_sp = self._solve_h0()
        self._check_tables()
        self._wbasis_cache: Dict[str, List[Tuple[Root, Sparse]]] = {}

    # -- derived data -------------------------------------------------

    @property
    def dim(self) -> int:
        return self.rank + len(self._rootvec_sp)

    @property
    def cartan(self) -> List[List[List[Scalar]]]:
        return [_sp_to_dense(h, self.n) for h in self._cartan_sp]

    @property
    def h0(self) -> List[List[Scalar]]:
        return _sp_to_dense(self._h0_sp, self.n)

    def root_vector(self, root: Root) -> List[List[Scalar]]:
        return _sp_to_dense(self._rootvec_sp[root], self.n)

    def root_vector_sparse(self, root: Root) -> Sparse:
        return self._rootvec_sp[root]

    def roots(self) -> List[Root]:
        return sorted(self._rootvec_sp, key=Root.sort_key)

    def alpha_value(self, root: Root, i: int) -> Fraction:
        """Value of the root on the i-th Cartan generator (1-based)."""
        total = Fraction(0)
        for k, ck in enumerate(root.coords, start=1):
            if ck:
                total += ck * self._alpha_on_h[k - 1][i - 1]
        return total

    def grade_basis(self, grade: int) -> List[Sparse]:
        """Basis of the height-eigenspace g^{(grade)} (Cartan at grade 0)."""
        if grade == 0:
            return list(self._cartan_sp)
        if grade > 0:
            roots = self.rs.height_index.get(grade, ())
            return [self._rootvec_sp[r] for r in roots]
        roots = self.rs.height_index.get(-grade, ())
        return [self._rootvec_sp[-r] for r in roots]

    def grades(self) -> List[int]:
        hmax = self.rs.max_height()
        return list(range(-hmax, hmax + 1))

    def basis_sparse(self) -> List[Tuple[int, Sparse]]:
        """Full basis as (grade, matrix), grades ascending."""
        out: List[Tuple[int, Sparse]] = []
        for g in self.grades():
            out.extend((g, m) for m in self.grade_basis(g))
        return out

    # -- principal nilpotents ------------------------------------------

    def a0_plus_sparse(self) -> Sparse:
        return _sp_add(*(self._rootvec_sp[a] for a in self.rs.simple_roots()))

    def a0_minus_sparse(self) -> Sparse:
        return _sp_add(*(self._rootvec_sp[-a] for a in self.rs.simple_roots()))

    # -- construction-time validation -----------------------------------

    def _eigenvalue_table(self) -> List[List[Fraction]]:
        """alpha_k(H_i) read off the simple root vectors, then verified globally."""
        table = [[Fraction(0)] * self.rank for _ in range(self.rank)]
        for k, alpha in enumerate(self.rs.simple_roots()):
            x = self._rootvec_sp[alpha]
            if not x:
                raise AssertionError(f"zero root vector for {alpha}")
            for i, h in enumerate(self._cartan_sp):
                br = _sp_bracket(h, x)
                ratio = None
                for key, v in x.items():
                    got = br.get(key, _S0)
                    r = got / v
                    if ratio is None:
                        ratio = r
                    elif not (ratio == r):
                        raise AssertionError(
                            f"[H_{i+1}, X_{alpha}] is not a multiple of X_{alpha}"
                        )
                if set(br) - set(x):
                    raise AssertionError(f"[H_{i+1}, X_{alpha}] leaves the root space")
                table[k][i] = ratio.as_fraction()
        return table

    def _solve_h0(self) -> Sparse:
        """Unique Cartan element with value 1 on every simple root."""
        a = [[Scalar(self._alpha_on_h[k][i]) for i in range(self.rank)]
             for k in range(self.rank)]
        b = [[_S1] for _ in range(self.rank)]
        sol = linalg.solve(a, b, _S0)
        if sol is None or linalg.rank(a) != self.rank:
            raise AssertionError("grading element is not uniquely determined")
        return _sp_add(*(_sp_scale(sol[i][0], self._cartan_sp[i]) for i in range(self.rank)))

    def _check_tables(self):
        expected_dim = {
            "A": (self.rank + 1) ** 2 - 1,
            "B": 2 * self.rank**2 + self.rank,
            "C": 2 * self.rank**2 + self.rank,
            "D": 2 * self.rank**2 - self.rank,
            "G2": 14,
        }[self.kind]
        if self.dim != expected_dim:
            raise AssertionError(f"dimension {self.dim} != {expected_dim}")
        if _vectors_rank(self._cartan_sp) != self.rank:
            raise AssertionError("Cartan generators are dependent")
        for m in self._cartan_sp:
            if _sp_trace(m):
                raise AssertionError("Cartan generator has nonzero trace")
        for root, x in self._rootvec_sp.items():
            if not x:
                raise AssertionError(f"zero root vector for {root}")
            if _sp_trace(x):
                raise AssertionError(f"root vector for {root} has nonzero trace")
            for i, h in enumerate(self._cartan_sp, start=1):
                want = _sp_scale(Scalar(self.alpha_value(root, i)), x)
                if _sp_add(_sp_bracket(h, x), _sp_neg(want)):
                    raise AssertionError(f"[H_{i}, X_{root}] != {root}(H_{i}) X_{root}")
            want = _sp_scale(Scalar(root.height), x)
            if _sp_add(_sp_bracket(self._h0_sp, x), _sp_neg(want)):
                raise AssertionError(f"[H_0, X_{root}] != ht X_{root}")

    def __repr__(self):
        return f"ChevalleyRep({self.kind}, {self.rank}, n={self.n})"


@lru_cache(maxsize=None)
def build_rep(kind: str, rank: int) -> ChevalleyRep:
    """Build (and cache) the representation for the given type and rank."""
    return ChevalleyRep(normalize_kind(kind), rank)


# --- public matrix operations ------------------------------------------------

def bracket(x, y):
    """Commutator x y - y x of dense matrices (Scalar or DiffRat entries)."""
    return linalg.bracket(x, y)


def principal_nilpotents(rep: ChevalleyRep):
    """Sums of the simple positive resp. negative root vectors."""
    return (_sp_to_dense(rep.a0_plus_sparse(), rep.n),
            _sp_to_dense(rep.a0_minus_sparse(), rep.n))


def centralizer_basis(rep: ChevalleyRep) -> List[Tuple[int, List[List[Scalar]]]]:
    """Graded basis of the kernel of ad(A_0^+), as (grade, matrix) pairs.

    The kernel has dimension equal to the rank and its grades reproduce the
    exponents; anything else signals a representation bug.
    """
    a0p = rep.a0_plus_sparse()
    out: List[Tuple[int, Sparse]] = []
    for g in rep.grades():
        basis = rep.grade_basis(g)
        if not basis:
            continue
        target = rep.grade_basis(g + 1)
        images = [_sp_bracket(a0p, b) for b in basis]
        if not target:
            for img, b in zip(images, basis):
                if not img:
                    out.append((g, b))
                else:
                    raise AssertionError("bracket escapes the grading at the top")
            continue
        coords = _span_solve(images, target)
        if coords is None:
            raise AssertionError("ad(A_0^+) does not respect the grading")
        mat = [[coords[j][i] for j in range(len(images))] for i in range(len(target))]
        for combo in linalg.nullspace(mat, _S0, _S1):
            z = _sp_add(*(_sp_scale(c, b) for c, b in zip(combo, basis) if c))
            out.append((g, z))
    grades = sorted(g for g, _ in out)
    if len(out) != rep.rank or grades != rep.rs.exponents():
        raise AssertionError(
            f"centralizer of A_0^+ has grades {grades}, expected {rep.rs.exponents()}"
        )
    out.sort(key=lambda p: p[0])
    return [(g, _sp_to_dense(m, rep.n)) for g, m in out]


def _w_basis_sparse(rep: ChevalleyRep, polarity: str) -> List[Tuple[Root, Sparse]]:
    if polarity not in ("standard", "flipped"):
        raise ValueError(f"polarity must be standard or flipped, got {polarity!r}")
    if polarity in rep._wbasis_cache:
        return rep._wbasis_cache[polarity]
    out: List[Tuple[Root, Sparse]] = []
    if polarity == "standard":
        other = rep.a0_minus_sparse()
        for src in rep.rs.positive_roots:
            w = _sp_bracket(rep.root_vector_sparse(src), other)
            out.append((src, w))
    else:
        other = rep.a0_plus_sparse()
        for src in rep.rs.positive_roots:
            w = _sp_bracket(rep.root_vector_sparse(-src), other)
            out.append((src, w))
    sign = 1 if polarity == "standard" else -1
    for src, w in out:
        grade = sign * (src.height - 1)
        if _span_solve([w], rep.grade_basis(grade)) is None:
            raise AssertionError(f"W({src}) is not in grade {grade}")
    if _vectors_rank([w for _, w in out]) != len(out):
        raise AssertionError("W basis is linearly dependent")
    rep._wbasis_cache[polarity] = out
    return out


def w_basis(rep: ChevalleyRep, polarity: str = "standard") -> List[Tuple[Root, List[List[Scalar]]]]:
    """Basis [X, A_0^-] (or the mirrored [X_-, A_0^+]) ordered by source height."""
    return [(src, _sp_to_dense(w, rep.n)) for src, w in _w_basis_sparse(rep, polarity)]


def _complement_vectors(rep: ChevalleyRep, gammas: Sequence[Root], polarity: str) -> List[Sparse]:
    if polarity == "standard":
        return [rep.root_vector_sparse(g) for g in gammas]
    return [rep.root_vector_sparse(-g) for g in gammas]


def find_complementary_roots(rep: ChevalleyRep, polarity: str = "standard") -> List[Root]:
    """Greedy search for l positive roots whose vectors complete the W basis.

    For each exponent value m the span of the grade-m part of the W basis is
    extended by root vectors of height m, scanning candidates in lex order.
    """
    ws = _w_basis_sparse(rep, polarity)
    sign = 1 if polarity == "standard" else -1
    exps = rep.rs.exponents()
    chosen: List[Root] = []
    for m in sorted(set(exps)):
        needed = exps.count(m)
        current = [w for src, w in ws if src.height == m + 1]
        got = 0
        base_rank = _vectors_rank(current)
        for cand in sorted(rep.rs.height_index.get(m, ()), key=lambda r: r.coords):
            vec = _complement_vectors(rep, [cand], polarity)[0]
            r = _vectors_rank(current + [vec])
            if r > base_rank:
                current.append(vec)
                base_rank = r
                chosen.append(cand)
                got += 1
                if got == needed:
                    break
        if got != needed:
            raise AssertionError(
                f"could not extend grade {m} to a basis ({got}/{needed} found)"
            )
    if not complement_rank_test(rep, chosen, polarity):
        raise AssertionError("greedy complement failed the direct-sum rank test")
    return chosen


def complement_rank_test(rep: ChevalleyRep, gammas: Sequence[Root], polarity: str = "standard") -> bool:
    """Direct-sum test: W basis plus the given root vectors spans b^+/b^-."""
    if len(gammas) != rep.rank:
        return False
    if sorted(g.height for g in gammas) != rep.rs.exponents():
        return False
    ws = [w for _, w in _w_basis_sparse(rep, polarity)]
    vecs = ws + _complement_vectors(rep, gammas, polarity)
    want = rep.rank + len(ws)
    return _vectors_rank(vecs) == want


def verify_bplus_decomposition(rep: ChevalleyRep) -> Dict[str, object]:
    """Check b^+ = centralizer of A_0^+ (+) ad(A_0^-)(u^+), by rank."""
    zs = centralizer_basis(rep)
    ws = _w_basis_sparse(rep, "standard")
    r = len(ws)
    dim_b = rep.rank + r
    stacked = [_dense_to_sparse(m) for _, m in zs] + [w for _, w in ws]
    got = _vectors_rank(stacked)
    return {
        "kind": rep.kind,
        "rank": rep.rank,
        "dim_b": dim_b,
        "centralizer_dim": len(zs),
        "image_dim": r,
        "full_rank": got == dim_b,
        "rank_found": got,
    }


def _dense_to_sparse(mat) -> Sparse:
    out: Sparse = {}
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if v:
                out[(i, j)] = v
    return out


# --- parameter matrices ------------------------------------------------------

FAMILIES = ("sl", "sp", "so_odd", "so_even", "g2", "ms")

_FAMILY_KIND = {"sl": "A", "sp": "C", "so_odd": "B", "so_even": "D", "g2": "G2"}
_KIND_FAMILY = {v: k for k, v in _FAMILY_KIND.items()}


def normalize_family(family: str) -> str:
    f = str(family).lower().replace("-", "_")
    aliases = {"a": "sl", "b": "so_odd", "c": "sp", "d": "so_even", "soodd": "so_odd",
               "soeven": "so_even", "g": "g2"}
    f = aliases.get(f, f)
    if f not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    return f


def family_kind(family: str, kind: str = None) -> str:
    family = normalize_family(family)
    if family == "ms":
        if kind is None:
            raise ValueError("family ms needs an explicit kind")
        return normalize_kind(kind)
    want = _FAMILY_KIND[family]
    if kind is not None and normalize_kind(kind) != want:
        raise ValueError(f"family {family} is incompatible with kind {kind}")
    return want


def default_family(kind: str) -> str:
    return _KIND_FAMILY[normalize_kind(kind)]


def parameter_matrix(kind: str, rank: int, family: str) -> List[List[DiffRat]]:
    """The explicit parameter plane for the requested family, over DiffRat.

    sl:      A_0^+ + sum t_i X_{-gamma_{l+1-i}}            (companion shape)
    sp:      A_0^+ + sum (-t_i) X_{-gamma_i}
    so_odd:  A_0^+ + 1/2 sum t_i X_{-gamma_i}
    so_even: A_0^+ - t_1 X_{-gamma_bar} - sum t_{i+1} X_{-gamma_i}
    g2:      A_0^+ + t_1 X_{-gamma_1} + t_2 X_{-gamma_2}
    ms:      sum (X_{a_i} + X_{-a_i}) + sum t_i H_i        (any kind)
    """
    family = normalize_family(family)
    kind = family_kind(family, kind)
    rep = build_rep(kind, rank)
    l = rep.rank
    mat = _sp_to_diffrat(rep.a0_plus_sparse(), rep.n)

    def add(coeff: DiffRat, sp: Sparse):
        for (i, j), v in sp.items():
            mat[i][j] = mat[i][j] + coeff * DiffRat.from_scalar(v)

    if family == "ms":
        mat = _sp_to_diffrat(
            _sp_add(rep.a0_plus_sparse(), rep.a0_minus_sparse()), rep.n
        )
        for i in range(1, l + 1):
            add(DiffRat.jet(i), rep._cartan_sp[i - 1])
        return mat

    gammas = rep.rs.closed_form_complementary_roots()
    if family == "sl":
        for i in range(1, l + 1):
            add(DiffRat.jet(i), rep.root_vector_sparse(-gammas[l - i]))
    elif family == "sp":
        for i in range(1, l + 1):
            add(-DiffRat.jet(i), rep.root_vector_sparse(-gammas[i - 1]))
    elif family == "so_odd":
        half = DiffRat.const(Fraction(1, 2))
        # -t_1/2 on the short root gamma_1 = eps_l: under the stored sign of
        # X_{-eps_l} this is the plane whose first-coordinate ODE system
        # expands to the classical odd orthogonal operator.
        add(-(half * DiffRat.jet(1)), rep.root_vector_sparse(-gammas[0]))
        for i in range(2, l + 1):
            add(half * DiffRat.jet(i), rep.root_vector_sparse(-gammas[i - 1]))
    elif family == "so_even":
        gbar = gammas[-1]
        add(-DiffRat.jet(1), rep.root_vector_sparse(-gbar))
        for i in range(1, l):
            add(-DiffRat.jet(i + 1), rep.root_vector_sparse(-gammas[i - 1]))
    elif family == "g2":
        add(DiffRat.jet(1), rep.root_vector_sparse(-gammas[0]))
        add(DiffRat.jet(2), rep.root_vector_sparse(-gammas[1]))
    return mat


def matrix_in_span(rep: ChevalleyRep, mat: List[List[DiffRat]]) -> Optional[List[DiffRat]]:
    """Coordinates of a DiffRat matrix in the Chevalley basis, or None."""
    basis = [m for _, m in rep.basis_sparse()]
    zero = DiffRat.zero()
    support = sorted({k for b in basis for k in b})
    pos = {k: idx for idx, k in enumerate(support)}
    a = [[zero] * len(basis) for _ in support]
    for col, b in enumerate(basis):
        for k, v in b.items():
            a[pos[k]][col] = DiffRat.from_scalar(v)
    rhs = [[zero] for _ in support]
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if v:
                if (i, j) not in pos:
                    return None
                rhs[pos[(i, j)]][0] = v
    sol = linalg.solve(a, rhs, zero)
    if sol is None:
        return None
    return [sol[i][0] for i in range(len(basis))]


# --- JSON wire format --------------------------------------------------------

def matrix_to_json(mat, kind: str = None, rank: int = None) -> Dict[str, object]:
    """{kind, rank, dim, entries: [[row, col, string]]} with 1-based indices."""
    entries = []
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if v:
                entries.append([i + 1, j + 1, str(v)])
    out = {"dim": len(mat), "entries": entries}
    if kind is not None:
        out["kind"] = kind
    if rank is not None:
        out["rank"] = rank
    return out


def matrix_from_json(data: Dict[str, object]) -> List[List[DiffRat]]:
    from .jets import parse_diffrat

    n = int(data["dim"])
    zero = DiffRat.zero()
    mat = [[zero] * n for _ in range(n)]
    for row, col, text in data["entries"]:
        if not (1 <= row <= n and 1 <= col <= n):
            raise ValueError(f"entry ({row},{col}) outside a {n}x{n} matrix")
        mat[row - 1][col - 1] = parse_diffrat(text)
    return mat
