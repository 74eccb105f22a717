"""Exact dense linear algebra over any scalar type with /, ==, truthiness.

Dimensions never exceed 27x27 here, so plain Gaussian elimination with
first-nonzero pivoting is both fast enough and deterministic (the same
input always yields the same echelon form and kernel basis).
"""

from .errors import NotInvertible


def identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols, zero):
    return [[zero] * cols for _ in range(rows)]


def matvec(m, v):
    out = []
    for row in m:
        acc = None
        for a, b in zip(row, v):
            if not a:
                continue
            t = a * b
            acc = t if acc is None else acc + t
        if acc is None:
            acc = row[0] * v[0]  # zero of the right type
        out.append(acc)
    return out


def matmul(a, b):
    n, k = len(a), len(b)
    cols = len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(cols):
            acc = ai[0] * b[0][j]
            for t in range(1, k):
                if ai[t]:
                    acc = acc + ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_equal(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _echelonize(m):
    """In-place reduced row echelon; returns list of pivot columns."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(m):
    work = [list(r) for r in m]
    return len(_echelonize(work))


def solve(m, rhs, one, zero):
    """Solve m x = rhs for square invertible m; raises NotInvertible."""
    n = len(m)
    aug = [list(m[i]) + [rhs[i]] for i in range(n)]
    pivots = _echelonize(aug)
    if pivots != list(range(n)):
        raise NotInvertible("singular linear system")
    return [aug[i][n] for i in range(n)]


def inverse(m, one, zero):
    n = len(m)
    aug = [list(m[i]) + identity(n, one, zero)[i] for i in range(n)]
    pivots = _echelonize(aug)
    if pivots != list(range(n)):
        raise NotInvertible("singular matrix")
    return [aug[i][n:] for i in range(n)]


def kernel_basis(m, one, zero):
    """Deterministic basis of the right kernel of m (echelon convention)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    work = [list(r) for r in m]
    pivots = _echelonize(work)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            val = work[r][fc]
            if val:
                vec[pc] = -val
        basis.append(vec)
    return basis


def left_inverse(m, one, zero):
    """P with P m = I for m with full column rank (least-norm not needed)."""
    # solve (m^T m) P = m^T ; works over exact fields whenever columns are
    # independent AND m^T m is invertible; fall back to row selection else
    rows, cols = len(m), len(m[0])
    mt = transpose(m)
    gram = matmul(mt, m)
    try:
        gram_inv = inverse(gram, one, zero)
        return matmul(gram_inv, mt)
    except NotInvertible:
        pass
    # pick a set of rows of m forming an invertible square block
    work = [list(r) for r in mt]
    _echelonize(work)
    # pivot columns of m^T = row indices of m that are independent
    chosen = []
    sub = []
    for i in range(rows):
        if len(chosen) == cols:
            break
        cand = sub + [m[i]]
        if rank(cand) == len(cand):
            sub = cand
            chosen.append(i)
    if len(chosen) != cols:
        raise NotInvertible("matrix does not have full column rank")
    sub_inv = inverse(sub, one, zero)
    p = zero_matrix(cols, rows, zero)
    for j, i in enumerate(chosen):
        for r in range(cols):
            p[r][i] = sub_inv[r][j]
    return p
