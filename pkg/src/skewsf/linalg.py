"""Dense exact linear algebra over a field handle.

Matrices are tuples/lists of row lists of encoded elements.  The field handle
needs zero/one attributes and add/sub/neg/mul/inv methods; this covers the
tower fields, F_q, and the eigenring field alike.  Dimensions here stay tiny
(at most a few hundred), so plain Gaussian elimination is used throughout.
"""

from __future__ import annotations


def identity(F, size: int):
    return [[F.one if i == j else F.zero for j in range(size)] for i in range(size)]


def mat_mul(F, A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    out = [[F.zero] * cols for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if a == F.zero:
                continue
            Bk = B[k]
            for j in range(cols):
                Oi[j] = F.add(Oi[j], F.mul(a, Bk[j]))
    return out


def mat_vec(F, A, v):
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if a != F.zero and x != F.zero:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def _eliminate(F, rows):
    """Row-reduce in place; returns list of (pivot_col, row_index)."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != F.zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != F.zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append((c, r))
        r += 1
    return pivots


def rank(F, A) -> int:
    rows = [list(r) for r in A]
    if not rows:
        return 0
    return len(_eliminate(F, rows))


def kernel_basis(F, A):
    """Basis of {x : A x = 0}, in reduced echelon order (deterministic)."""
    if not A:
        return []
    rows = [list(r) for r in A]
    n = len(rows[0])
    pivots = _eliminate(F, rows)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = [F.zero] * n
        vec[free] = F.one
        for c, r in pivots:
            vec[c] = F.neg(rows[r][free])
        basis.append(vec)
    return basis


def solve(F, A, b):
    """One solution of A x = b, or None."""
    rows = [list(r) + [v] for r, v in zip(A, b)]
    n = len(A[0])
    pivots = _eliminate(F, rows)
    x = [F.zero] * n
    for c, r in pivots:
        if c == n:
            return None  # pivot in the augmented column
        x[c] = rows[r][n]
    # rows beyond the pivots must have vanished entirely
    for i in range(len(pivots), len(rows)):
        if rows[i][n] != F.zero:
            return None
    return x


def inverse(F, A):
    """Matrix inverse, or None when singular."""
    n = len(A)
    rows = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    pivots = _eliminate(F, rows)
    if len(pivots) < n or any(c >= n for c, _ in pivots):
        return None
    return [row[n:] for row in rows]


def is_invertible(F, A) -> bool:
    return inverse(F, A) is not None


class SpanBuilder:
    """Incremental echelon span of vectors with combination tracking.

    `reduce` returns (residual, combo) where combo expresses the reduced part
    over the previously added vectors; `add` extends the span.
    """

    def __init__(self, F, dim: int):
        self.F = F
        self.dim = dim
        self.rows = []  # (pivot_col, rowvec, combo over added vectors)
        self.count = 0

    def reduce(self, vec):
        F = self.F
        v = list(vec)
        combo = [F.zero] * self.count
        for pc, row, rcombo in self.rows:
            c = v[pc]
            if c == F.zero:
                continue
            for j in range(self.dim):
                v[j] = F.sub(v[j], F.mul(c, row[j]))
            for j, rc in enumerate(rcombo):
                combo[j] = F.add(combo[j], F.mul(c, rc))
        return v, combo

    def add(self, vec) -> bool:
        """Add a vector; returns False when it was already in the span."""
        F = self.F
        v, combo = self.reduce(vec)
        pc = next((j for j, x in enumerate(v) if x != F.zero), None)
        if pc is None:
            return False
        inv = F.inv(v[pc])
        row = [F.mul(inv, x) for x in v]
        combo = [F.neg(F.mul(inv, c)) for c in combo] + [inv]
        for _, orow, ocombo in self.rows:
            ocombo.append(F.zero)
        # record combo so that row = sum combo_j * added_j
        self.rows.append((pc, row, combo))
        self.count += 1
        return True

    def coords_of(self, vec):
        """Coefficients expressing vec over the added vectors, or None."""
        F = self.F
        v, combo = self.reduce(vec)
        if any(x != F.zero for x in v):
            return None
        return combo

    def __len__(self):
        return self.count

    def __contains__(self, vec):
        return self.coords_of(vec) is not None
