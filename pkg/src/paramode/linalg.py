"""Generic exact linear algebra over any field-like elements.

Entries only need +, -, *, /, unary minus and truthiness (False iff zero).
Everything here is plain Gaussian elimination on lists of lists; sizes in
this package stay small (matrices up to ~170 columns), so clarity wins over
asymptotics.
"""

from __future__ import annotations


def mat_add(x, y):
    return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_sub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_neg(x):
    return [[-a for a in row] for row in x]


def mat_scale(c, x):
    return [[c * a for a in row] for row in x]


def mat_mul(x, y):
    if len(y) == 0 or len(x) == 0:
        return []
    if len(x[0]) != len(y):
        raise ValueError(f"dimension mismatch: {len(x[0])} vs {len(y)}")
    yt = list(zip(*y))
    out = []
    for row in x:
        out_row = []
        for col in yt:
            acc = None
            for a, b in zip(row, col):
                if a and b:
                    term = a * b
                    acc = term if acc is None else acc + term
            if acc is None:
                z = row[0] * col[0]
                acc = z - z  # typed zero
            out_row.append(acc)
        out.append(out_row)
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(x):
    return [list(row) for row in zip(*x)]


def bracket(x, y):
    """Matrix commutator x y - y x."""
    return mat_sub(mat_mul(x, y), mat_mul(y, x))


def mat_trace(x):
    t = x[0][0]
    for i in range(1, len(x)):
        t = t + x[i][i]
    return t


def mat_equal(x, y):
    if len(x) != len(y):
        return False
    for rx, ry in zip(x, y):
        if len(rx) != len(ry):
            return False
        for a, b in zip(rx, ry):
            if not (a == b):
                return False
    return True


def _complexity(e):
    """Pivot preference: cheap entries first (deterministic)."""
    num = getattr(e, "num", None)
    if num is not None:
        den = getattr(e, "den", None)
        return len(num.terms) + (len(den.terms) if den is not None else 0)
    return 1


def _rref(rows, pivot_cols):
    """In-place reduced row echelon form on the first `pivot_cols` columns.

    Returns the list of pivot column indices.  Rows are full augmented rows;
    columns at index >= pivot_cols ride along.
    """
    pivots = []
    r = 0
    m = len(rows)
    for c in range(pivot_cols):
        best = None
        best_cost = None
        for i in range(r, m):
            if rows[i][c]:
                cost = _complexity(rows[i][c])
                if best is None or cost < best_cost:
                    best, best_cost = i, cost
                    if cost <= 1:
                        break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c]
        if not (inv == 1):
            rows[r] = [e / inv for e in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(mat):
    if not mat:
        return 0
    rows = [list(r) for r in mat]
    return len(_rref(rows, len(rows[0])))


def solve(a, b, zero):
    """Solve a x = b columnwise; returns x or None when inconsistent.

    `a` is m x n, `b` is m x k.  Underdetermined systems get zero free
    variables, so the result is one particular solution.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    rows = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    pivots = _rref(rows, n)
    for i in range(len(pivots), m):
        if any(rows[i][n + j] for j in range(k)):
            return None
    x = [[zero for _ in range(k)] for _ in range(n)]
    for r, c in enumerate(pivots):
        for j in range(k):
            x[c][j] = rows[r][n + j]
    return x


def solve_unique(a, b, zero):
    """Solve a x = b requiring full column rank; returns (x, rank).

    x is None when the system is rank deficient or inconsistent; the achieved
    rank is always reported.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    rows = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        return None, len(pivots)
    for i in range(len(pivots), m):
        if any(rows[i][n + j] for j in range(k)):
            return None, len(pivots)
    x = [[zero for _ in range(k)] for _ in range(n)]
    for r, c in enumerate(pivots):
        for j in range(k):
            x[c][j] = rows[r][n + j]
    return x, len(pivots)


def nullspace(a, zero, one):
    """Basis of the right kernel of `a` (list of column vectors as lists)."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [list(r) for r in a]
    pivots = _rref(rows, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [zero] * n
        v[free] = one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(v)
    return basis


def inverse(a, zero, one):
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(a)
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    pivots = _rref(rows, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]
