"""Tiny exact linear algebra over Scalars.

Graded components here are at most two-dimensional, so plain Gaussian
elimination on lists is all that is needed.
"""


def _rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors, field):
    if not vectors:
        return 0
    return len(_rref(vectors, field)[1])


def nullspace(matrix, field):
    """Basis of {v : matrix v = 0}; matrix given as a list of rows."""
    ncols = len(matrix[0])
    rows, pivots = _rref(matrix, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def in_span(vectors, target, field):
    """True when target is a linear combination of vectors."""
    if all(x.is_zero() for x in target):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [target], field) == rank(vectors, field)


def mat_mul(a, b):
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), a[i][0].field.zero) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def inverse(matrix, field):
    """Inverse of a square matrix, or None when singular."""
    n = len(matrix)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(matrix)]
    rows, pivots = _rref(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows[:n]]
