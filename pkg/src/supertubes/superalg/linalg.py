"""Small dense exact linear algebra over Fraction matrices.

Matrices are lists of row lists.  Everything here is plain Gaussian
elimination; sizes stay small (dimensions of test superspaces), so
clarity wins over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

Mat = list[list[Fraction]]
Vec = list[Fraction]


def mat(rows) -> Mat:
    return [[Fraction(v) for v in row] for row in rows]


def identity(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Mat:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            v = ai[k]
            if v == 0:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] += v * bk[j]
    return out


def matvec(a: Mat, v: Vec) -> Vec:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve(a: Mat, b: Vec) -> Vec | None:
    """Particular solution of a x = b, or None when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [Fraction(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def kernel_basis(a: Mat) -> list[Vec]:
    """Basis of the null space of a."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [identity(cols)[i] for i in range(cols)]
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def column_space_basis(a: Mat) -> list[Vec]:
    """Basis of the column space, as the pivot columns of a."""
    if not a:
        return []
    _, pivots = rref(a)
    return [[a[i][c] for i in range(len(a))] for c in pivots]


def extend_to_basis(vectors: list[Vec], dim: int) -> list[Vec]:
    """Complete independent vectors to a basis of Q^dim.

    Standard basis vectors are tried in index order, so the completion
    is deterministic.
    """
    cur = [v[:] for v in vectors]
    for i in range(dim):
        e = [Fraction(1 if j == i else 0) for j in range(dim)]
        trial = cur + [e]
        cols = [[trial[k][j] for k in range(len(trial))] for j in range(dim)]
        if rank(cols) == len(trial):
            cur.append(e)
        if len(cur) == dim:
            break
    if len(cur) != dim:
        raise ValueError("input vectors were not independent")
    return cur


def columns_matrix(vectors: list[Vec]) -> Mat:
    """Stack vectors as columns."""
    if not vectors:
        return []
    dim = len(vectors[0])
    return [[vectors[k][i] for k in range(len(vectors))] for i in range(dim)]


def in_span(vectors: list[Vec], v: Vec) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return solve(columns_matrix(vectors), v) is not None
