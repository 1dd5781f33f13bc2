# src/boolean_cube/kernels.py

from numba import njit, prange


@njit(cache=True)
def fwht_inplace(a):
    """Unnormalized Walsh-Hadamard butterfly, a[s] <- sum_b (-1)^{|b & s|} a[b]."""
    n = a.shape[0]
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2


@njit(cache=True, parallel=True)
def fwht_rows_inplace(a):
    """Row-wise butterfly for a (rows, 2^N) block."""
    rows, n = a.shape
    for r in prange(rows):
        h = 1
        while h < n:
            for i in range(0, n, 2 * h):
                for j in range(i, i + h):
                    x = a[r, j]
                    y = a[r, j + h]
                    a[r, j] = x + y
                    a[r, j + h] = x - y
            h *= 2
