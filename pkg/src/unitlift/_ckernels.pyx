# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterparts of :mod:`unitlift._kernels_py`.

Entries must be below ``2**63``; products are accumulated in unsigned
128-bit integers and reduced after every term, so nothing can wrap.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cdef void _mul(const u64* a, const u64* b, u64* out, Py_ssize_t n, u64 m) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef u128 acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = (acc + <u128>a[i * n + k] * b[k * n + j]) % m
            out[i * n + j] = <u64>acc


cdef u64* _load(object seq, Py_ssize_t size) except NULL:
    cdef u64* buf = <u64*>malloc(size * sizeof(u64))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(size):
        buf[i] = <u64>seq[i]
    return buf


cdef list _dump(const u64* buf, Py_ssize_t size):
    return [buf[i] for i in range(size)]


def matmul_mod(a, b, Py_ssize_t n, u64 m):
    cdef Py_ssize_t size = n * n
    cdef u64* pa = _load(a, size)
    cdef u64* pb = _load(b, size)
    cdef u64* po = <u64*>malloc(size * sizeof(u64))
    try:
        with nogil:
            _mul(pa, pb, po, n, m)
        return _dump(po, size)
    finally:
        free(pa)
        free(pb)
        free(po)


def identity(Py_ssize_t n, u64 m):
    out = [0] * (n * n)
    for i in range(n):
        out[i * n + i] = 1 % m
    return out


def matpow_mod(a, object e, Py_ssize_t n, u64 m):
    if e < 0:
        raise ValueError("negative exponent")
    if e == 0:
        return identity(n, m), 0
    cdef Py_ssize_t size = n * n
    cdef u64* base = _load(a, size)
    cdef u64* res = _load(a, size)
    cdef u64* tmp = <u64*>malloc(size * sizeof(u64))
    cdef u64* swap
    cdef long products = 0
    bits = bin(e)[3:]
    try:
        for bit in bits:
            with nogil:
                _mul(res, res, tmp, n, m)
            swap = res; res = tmp; tmp = swap
            products += 1
            if bit == "1":
                with nogil:
                    _mul(res, base, tmp, n, m)
                swap = res; res = tmp; tmp = swap
                products += 1
        return _dump(res, size), products
    finally:
        free(base)
        free(res)
        free(tmp)


def convolve_mod(x, y, table, Py_ssize_t order, u64 m):
    cdef Py_ssize_t size = order * order
    cdef u64* px = _load(x, order)
    cdef u64* py = _load(y, order)
    cdef u64* pt = _load(table, size)
    cdef u128* acc = <u128*>malloc(order * sizeof(u128))
    cdef Py_ssize_t g1, g2
    cdef u64 h
    try:
        with nogil:
            for g1 in range(order):
                acc[g1] = 0
            for g1 in range(order):
                if px[g1] == 0:
                    continue
                for g2 in range(order):
                    if py[g2] == 0:
                        continue
                    h = pt[g1 * order + g2]
                    acc[h] = (acc[h] + <u128>px[g1] * py[g2]) % m
        return [<u64>acc[g1] for g1 in range(order)]
    finally:
        free(px)
        free(py)
        free(pt)
        free(acc)
