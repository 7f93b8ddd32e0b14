"""Pure-Python reference kernels.

Matrices are flat row-major sequences of length ``n*n`` with entries in
``[0, m)``.  Every function returns a new list.
"""


def matmul_mod(a, b, n, m):
    out = [0] * (n * n)
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += row[k] * b[k * n + j]
            out[i * n + j] = acc % m
    return out


def identity(n, m):
    out = [0] * (n * n)
    one = 1 % m
    for i in range(n):
        out[i * n + i] = one
    return out


def matpow_mod(a, e, n, m):
    """Left-to-right square and multiply; returns ``(a**e, products_used)``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(n, m)
    if e == 0:
        return result, 0
    products = 0
    result = list(a)
    for bit in bin(e)[3:]:
        result = matmul_mod(result, result, n, m)
        products += 1
        if bit == "1":
            result = matmul_mod(result, a, n, m)
            products += 1
    return result, products


def convolve_mod(x, y, table, order, m):
    """Group-algebra product over ``Z_m`` using a flat Cayley table."""
    out = [0] * order
    for g1 in range(order):
        xv = x[g1]
        if not xv:
            continue
        base = g1 * order
        for g2 in range(order):
            yv = y[g2]
            if yv:
                h = table[base + g2]
                out[h] += xv * yv
    return [v % m for v in out]
