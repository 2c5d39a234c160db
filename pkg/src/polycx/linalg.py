"""Dense exact linear algebra over Q.

Small matrices only (the complexes we handle have at most a few hundred
faces), so plain Gaussian elimination with rational pivots is both exact
and fast enough.  Matrices are lists/tuples of equal-length rows of QQ.
"""

from .rationals import QQ, ZERO, ONE


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def is_zero_vec(u):
    return all(a == 0 for a in u)


def rref(rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    m = [list(QQ(x) for x in row) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows):
    """Basis of the right kernel {x : A x = 0}, as a list of vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][free]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """One solution of A x = b, or None if inconsistent.

    When the system is underdetermined the free variables are set to 0.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [tuple(row) + (QQ(b),) for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if is_zero_vec(row[:ncols]) and row[ncols] != 0:
            return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[p] = red[r][ncols]
    return tuple(x)


def det(rows):
    m = [list(QQ(x) for x in row) for row in rows]
    n = len(m)
    sign = ONE
    result = ONE
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return ZERO
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        result *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * result


def in_row_space(rows, v):
    """True iff v lies in the row space of `rows`."""
    base, _ = rref(rows)
    return rank(list(base) + [tuple(v)]) == len(base)


def row_space_contained(inner, outer):
    return all(in_row_space(outer, v) for v in inner)


def intersect_row_spaces(a_rows, b_rows):
    """Basis of rowspace(A) ∩ rowspace(B)."""
    a, _ = rref(a_rows)
    b, _ = rref(b_rows)
    if not a or not b:
        return []
    # x = y A = z B  <=>  (y, z) in kernel of [A^T | -B^T]
    ncols = len(a[0])
    stacked = []
    for c in range(ncols):
        stacked.append(tuple(row[c] for row in a) + tuple(-row[c] for row in b))
    combos = nullspace(stacked)
    vectors = []
    for combo in combos:
        y = combo[: len(a)]
        v = tuple(dot(y, tuple(row[c] for row in a)) for c in range(ncols))
        if not is_zero_vec(v):
            vectors.append(v)
    base, _ = rref(vectors)
    return list(base)
