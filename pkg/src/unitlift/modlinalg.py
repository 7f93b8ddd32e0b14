"""Dense linear algebra over ``Z_p`` and ``Z_{p^k}`` on lists of rows."""

from .errors import NotAUnitError


def identity(n, m=None):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b, m):
    n, inner, cols = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) % m for j in range(cols)]
        for i in range(n)
    ]


def gauss_jordan_inverse(a, m, p=None, counter=None):
    """Invert ``a`` over ``Z_m`` using only pivots that are units mod ``p``.

    ``p`` defaults to ``m`` (prime modulus).  For ``m = p^k`` this is the
    unit-pivot elimination; every invertible matrix over the local ring
    ``Z_{p^k}`` has a unit in each pivot column.  ``counter`` is an optional
    one-element list that accumulates scalar multiplications.
    """
    p = p or m
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    muls = 0
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] % p), None)
        if pivot is None:
            raise NotAUnitError("matrix is singular modulo the residue prime")
        work[col], work[pivot] = work[pivot], work[col]
        inv = pow(work[col][col], -1, m)
        work[col] = [v * inv % m for v in work[col]]
        muls += 2 * n
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                prow = work[col]
                work[r] = [(v - f * pv) % m for v, pv in zip(work[r], prow)]
                muls += 2 * n
    if counter is not None:
        counter[0] += muls
    return [row[n:] for row in work]


def solve_left_regular(columns, target, p):
    """Solve ``A y = target`` over the field ``Z_p`` where ``columns[j]`` is
    column ``j`` of ``A``; returns ``None`` if ``A`` is singular."""
    n = len(columns)
    rows = [[columns[j][i] % p for j in range(n)] + [target[i] % p] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = pow(rows[col][col], -1, p)
        rows[col] = [v * inv % p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(v - f * pv) % p for v, pv in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def det_cofactor(a, mul, add, sub, zero):
    """Laplace expansion along the first row with caller-supplied ring ops."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return sub(mul(a[0][0], a[1][1]), mul(a[0][1], a[1][0]))
    total = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = mul(a[0][j], det_cofactor(minor, mul, add, sub, zero))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total


def det_bareiss(a):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly_berkowitz(a, mul, add, sub, neg, zero, one):
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(t I - a)``, division free.

    Works over any commutative ring given by the callables.
    """
    n = len(a)
    if n == 0:
        return [one]
    # coefficients for the trailing 1x1 block, then grow leftwards
    poly = [one, neg(a[n - 1][n - 1])]
    for size in range(2, n + 1):
        s = n - size
        a11 = a[s][s]
        row = a[s][s + 1:]
        col = [a[i][s] for i in range(s + 1, n)]
        sub_m = [r[s + 1:] for r in a[s + 1:]]
        # first column of the Toeplitz matrix: 1, -a11, -R C, -R A C, ...
        toe = [one, neg(a11)]
        vec = col
        for _ in range(size - 1):
            dot = zero
            for r_, v_ in zip(row, vec):
                dot = add(dot, mul(r_, v_))
            toe.append(neg(dot))
            nxt = []
            for r in sub_m:
                acc = zero
                for x_, v_ in zip(r, vec):
                    acc = add(acc, mul(x_, v_))
                nxt.append(acc)
            vec = nxt
        new = []
        for i in range(size + 1):
            acc = zero
            for j in range(min(i, size - 1) + 1):
                if i - j < len(toe):
                    acc = add(acc, mul(toe[i - j], poly[j]))
            new.append(acc)
        poly = new
    return poly
