"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""


def is_involutive_isometry(m, g):
    n = len(m)
    cols = list(zip(*m))
    for i in range(n):
        row = m[i]
        for j in range(n):
            if sum(a * b for a, b in zip(row, cols[j])) != (i == j):
                return False
    gm = [[sum(a * b for a, b in zip(g[i], cols[j])) for j in range(n)] for i in range(n)]
    gm_cols = list(zip(*gm))
    for i in range(n):
        for j in range(n):
            if sum(a * b for a, b in zip(cols[i], gm_cols[j])) != g[i][j]:
                return False
    return True


def commutes(a, b):
    a_cols, b_cols = list(zip(*a)), list(zip(*b))
    n = len(a)
    for i in range(n):
        for j in range(n):
            if sum(x * y for x, y in zip(a[i], b_cols[j])) != sum(x * y for x, y in zip(b[i], a_cols[j])):
                return False
    return True


def count_odd_cosets(gens2, g):
    k, n = len(gens2), len(g)
    odd = 0
    for mask in range(1 << k):
        y = [0] * n
        for i in range(k):
            if mask >> i & 1:
                y = [(a + b) & 3 for a, b in zip(y, gens2[i])]
        q = 0
        for i in range(n):
            if y[i]:
                q += y[i] * sum(gij * yj for gij, yj in zip(g[i], y) if yj)
        if q & 3:
            odd += 1
    return odd
