"""Root systems of types A, B, C, D and G2 in simple-root coordinates.

Positive roots are stored as integer coefficient vectors over the simple
basis, ordered by ascending height with lexicographic tie-break.  The module
also computes exponents from the height census (the Shapiro-Steinberg rule)
and the closed-form complementary-root lists used by the explicit parameter
matrices.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

KINDS = ("A", "B", "C", "D", "G2")


class Root:
    """Element of a finite root system, as coordinates over the simple roots."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(int(c) for c in coords)
        pos = any(c > 0 for c in coords)
        neg = any(c < 0 for c in coords)
        if (pos and neg) or not (pos or neg):
            raise ValueError(f"coordinates {coords} are not all of one sign")
        self.coords = coords

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def __eq__(self, other):
        return isinstance(other, Root) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return (self.height, self.coords)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            if c == 1:
                body = f"a{i}"
            elif c == -1:
                body = f"-a{i}"
            else:
                body = f"{c}*a{i}"
            if parts and not body.startswith("-"):
                parts.append(f"+{body}")
            else:
                parts.append(body)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"Root({self})"


def height(r: Root) -> int:
    """Sum of simple-root coordinates; negative for negative roots."""
    return r.height


def _unit(l: int, lo: int, hi: int, value: int = 1) -> List[int]:
    """Coordinate vector with `value` on positions lo..hi (1-based, inclusive)."""
    v = [0] * l
    for k in range(lo, hi + 1):
        v[k - 1] = value
    return v


def _positive_coords(kind: str, l: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []
    if kind == "A":
        for i in range(1, l + 1):
            for j in range(i, l + 1):
                out.append(tuple(_unit(l, i, j)))
    elif kind == "B":
        # eps_h, eps_i - eps_j, eps_i + eps_j
        for h in range(1, l + 1):
            out.append(tuple(_unit(l, h, l)))
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                out.append(tuple(_unit(l, i, j - 1)))
                v = _unit(l, i, j - 1)
                for k in range(j, l + 1):
                    v[k - 1] += 2
                out.append(tuple(v))
    elif kind == "C":
        # eps_i - eps_j, eps_i + eps_j, 2 eps_i
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                out.append(tuple(_unit(l, i, j - 1)))
                v = _unit(l, i, j - 1)
                for k in range(j, l):
                    v[k - 1] += 2
                v[l - 1] += 1
                out.append(tuple(v))
        for i in range(1, l + 1):
            v = [0] * l
            for k in range(i, l):
                v[k - 1] = 2
            v[l - 1] += 1
            out.append(tuple(v))
    elif kind == "D":
        # eps_i - eps_j, eps_i + eps_j (j < l), eps_i + eps_l
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                out.append(tuple(_unit(l, i, j - 1)))
        for i in range(1, l):
            for j in range(i + 1, l):
                v = _unit(l, i, j - 1)
                for k in range(j, l - 1):
                    v[k - 1] += 2
                v[l - 2] += 1
                v[l - 1] += 1
                out.append(tuple(v))
            v = _unit(l, i, l - 2) if i <= l - 2 else [0] * l
            v[l - 1] += 1
            out.append(tuple(v))
    elif kind == "G2":
        out = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    else:
        raise ValueError(f"unsupported kind {kind!r}")
    return out


class RootSystem:
    """Finite root system with height census and exponent data."""

    def __init__(self, kind: str, rank: int):
        kind = normalize_kind(kind)
        _check_rank(kind, rank)
        self.kind = kind
        self.rank = rank
        coords = _positive_coords(kind, rank)
        if len(set(coords)) != len(coords):
            raise AssertionError("duplicate positive roots generated")
        self._phi_plus = set(coords)
        self._phi = self._phi_plus | {tuple(-c for c in v) for v in coords}
        self.positive_roots = sorted((Root(v) for v in coords), key=Root.sort_key)
        self.height_index: Dict[int, List[Root]] = {}
        for r in self.positive_roots:
            self.height_index.setdefault(r.height, []).append(r)
        self._validate()

    # construction checks ------------------------------------------------

    def _validate(self):
        counts = {"A": self.rank * (self.rank + 1),
                  "B": 2 * self.rank * self.rank,
                  "C": 2 * self.rank * self.rank,
                  "D": 2 * self.rank * (self.rank - 1),
                  "G2": 12}
        if len(self._phi) != counts[self.kind]:
            raise AssertionError(
                f"{self.kind}{self.rank}: expected {counts[self.kind]} roots, got {len(self._phi)}"
            )
        for r in self.positive_roots:
            if r.height < 2:
                continue
            if not any(
                self.is_root_coords(tuple(c - s for c, s in zip(r.coords, simple.coords)))
                for simple in self.simple_roots()
            ):
                raise AssertionError(f"{r} is not simple + (height-1) root")

    # basic queries --------------------------------------------------------

    def is_root_coords(self, coords) -> bool:
        return tuple(coords) in self._phi

    def root(self, coords) -> Root:
        r = Root(coords)
        if r.coords not in self._phi:
            raise ValueError(f"{r} is not a root of {self.kind}{self.rank}")
        return r

    def simple(self, i: int) -> Root:
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple root index {i} out of range")
        v = [0] * self.rank
        v[i - 1] = 1
        return self.root(v)

    def simple_roots(self) -> List[Root]:
        return [self.simple(i) for i in range(1, self.rank + 1)]

    def all_roots(self) -> List[Root]:
        return sorted((Root(v) for v in self._phi), key=Root.sort_key)

    def max_height(self) -> int:
        return max(self.height_index)

    def census(self) -> List[int]:
        """c_k = number of positive roots of height k, for k = 1..max height."""
        return [len(self.height_index.get(k, ())) for k in range(1, self.max_height() + 1)]

    # exponents -------------------------------------------------------------

    def exponents(self) -> List[int]:
        """Exponents from the height census: k occurs c_k - c_{k+1} times."""
        c = self.census()
        c.append(0)
        out: List[int] = []
        for k in range(1, len(c)):
            diff = c[k - 1] - c[k]
            if diff < 0:
                raise AssertionError(
                    f"height census of {self.kind}{self.rank} is not weakly decreasing"
                )
            out.extend([k] * diff)
        out.sort()
        if len(out) != self.rank:
            raise AssertionError("exponent multiplicities do not sum to the rank")
        return out

    # complementary roots ----------------------------------------------------

    def closed_form_complementary_roots(self) -> List[Root]:
        """The known closed-form list of l complementary roots.

        Heights reproduce the exponents as a multiset; for type D the list is
        gamma_1, ..., gamma_{l-1} followed by the extra height-(l-1) root.
        """
        l = self.rank
        out: List[Root] = []
        if self.kind == "A":
            for i in range(1, l + 1):
                out.append(self.root(_unit(l, l + 1 - i, l)))
        elif self.kind == "C":
            for i in range(1, l + 1):
                v = [0] * l
                for k in range(l + 1 - i, l):
                    v[k - 1] = 2
                v[l - 1] += 1
                out.append(self.root(v))
        elif self.kind == "B":
            out.append(self.root(_unit(l, l, l)))
            for i in range(1, l):
                v = [0] * l
                v[l - i - 1] = 1
                for k in range(l + 1 - i, l + 1):
                    v[k - 1] = 2
                out.append(self.root(v))
        elif self.kind == "D":
            out.append(self.root(_unit(l, l, l)))
            if l >= 3:
                v = [0] * l
                v[l - 3] = v[l - 2] = v[l - 1] = 1
                out.append(self.root(v))
            for i in range(3, l):
                v = [0] * l
                v[l - i - 1] = 1
                for k in range(l + 1 - i, l - 1):
                    v[k - 1] = 2
                v[l - 2] = 1
                v[l - 1] = 1
                out.append(self.root(v))
            v = _unit(l, 1, l - 2)
            v[l - 1] = 1
            out.append(self.root(v))
        elif self.kind == "G2":
            out = [self.root((0, 1)), self.root((3, 2))]
        heights = sorted(r.height for r in out)
        if heights != self.exponents():
            raise AssertionError("complementary-root heights disagree with exponents")
        return out

    def __repr__(self):
        return f"RootSystem({self.kind}, {self.rank})"


def normalize_kind(kind: str) -> str:
    k = str(kind).upper()
    if k in ("G2", "G"):
        return "G2"
    if k in ("A", "B", "C", "D"):
        return k
    raise ValueError(f"unsupported kind {kind!r}")


def _check_rank(kind: str, rank: int):
    if kind == "G2":
        if rank != 2:
            raise ValueError("type G2 requires rank = 2")
    elif kind == "D":
        if rank < 3:
            raise ValueError("type D requires rank >= 3")
    elif rank < 2:
        raise ValueError(f"type {kind} requires rank >= 2")


def build_root_system(kind: str, rank: int) -> RootSystem:
    """Construct the positive roots of the requested type in simple-root coordinates."""
    return RootSystem(kind, rank)


def classical_exponents(kind: str, rank: int) -> List[int]:
    """Textbook exponent tables, used as an independent cross-check."""
    kind = normalize_kind(kind)
    l = rank
    if kind == "A":
        return list(range(1, l + 1))
    if kind in ("B", "C"):
        return [2 * i - 1 for i in range(1, l + 1)]
    if kind == "D":
        return sorted([2 * i - 1 for i in range(1, l)] + [l - 1])
    return [1, 5]


def supported_systems(max_rank: int) -> List[Tuple[str, int]]:
    """All (kind, rank) pairs with rank <= max_rank, in a fixed order."""
    out: List[Tuple[str, int]] = []
    for kind in ("A", "B", "C"):
        out.extend((kind, r) for r in range(2, max_rank + 1))
    out.extend(("D", r) for r in range(3, max_rank + 1))
    if max_rank >= 2:
        out.append(("G2", 2))
    return out
