# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Same signatures and results as ``_kernels_py``."""

ctypedef long long i64


def is_involutive_isometry(const i64[:, ::1] m, const i64[:, ::1] g):
    """True iff m @ m == I and m.T @ g @ m == g."""
    cdef Py_ssize_t n = m.shape[0], i, j, k
    cdef i64 s
    cdef i64 gm[64][64]
    if n > 64:
        raise ValueError("matrix too large for compiled kernel")
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += m[i, k] * m[k, j]
            if s != (1 if i == j else 0):
                return False
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += g[i, k] * m[k, j]
            gm[i][j] = s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += m[k, i] * gm[k][j]
            if s != g[i, j]:
                return False
    return True


def commutes(const i64[:, ::1] a, const i64[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], i, j, k
    cdef i64 s, t
    for i in range(n):
        for j in range(n):
            s = 0
            t = 0
            for k in range(n):
                s += a[i, k] * b[k, j]
                t += b[i, k] * a[k, j]
            if s != t:
                return False
    return True


def count_odd_cosets(const i64[:, ::1] gens2, const i64[:, ::1] g):
    """Count x = sum(c_i g_i), c_i in {0,1}, whose norm x.x is not an integer.

    ``gens2`` holds the doubled generators 2*g_i (integer rows).  With
    y = 2x the test is y^T G y != 0 (mod 4); entries of y are kept mod 4,
    which changes y^T G y only by multiples of 8.
    """
    cdef Py_ssize_t k = gens2.shape[0], n = g.shape[0], i, j
    cdef long long mask, total = 1, odd = 0
    cdef i64 q, acc
    cdef i64[64] y
    if n > 64:
        raise ValueError("rank too large for compiled kernel")
    total <<= k
    for mask in range(total):
        for j in range(n):
            y[j] = 0
        for i in range(k):
            if (mask >> i) & 1:
                for j in range(n):
                    y[j] = (y[j] + gens2[i, j]) & 3
        q = 0
        for i in range(n):
            if y[i]:
                acc = 0
                for j in range(n):
                    acc += g[i, j] * y[j]
                q += y[i] * acc
        if q & 3:
            odd += 1
    return odd
