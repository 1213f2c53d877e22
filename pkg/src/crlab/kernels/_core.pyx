# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels over int64 point sets.

Inputs are distinct integers whose span is below 2**30, so every product of two
differences fits in int64 without overflow. The caller enforces the guard.
Outputs are (numerator, denominator) arrays with gcd-reduced, positive
denominators, in the same order as the pure-Python fallback.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cnp.import_array()


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline void _store(i64 num, i64 den, i64[::1] nums, i64[::1] dens, Py_ssize_t pos) nogil:
    cdef i64 g = _gcd(num, den)
    num //= g
    den //= g
    if den < 0:
        num = -num
        den = -den
    nums[pos] = num
    dens[pos] = den


def quad_values(const i64[::1] xs, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t per = (n - 1) * (n - 2) * (n - 3) if n >= 4 else 0
    cdef Py_ssize_t total = (stop - start) * per if stop > start else 0
    nums_arr = np.empty(total, dtype=np.int64)
    dens_arr = np.empty(total, dtype=np.int64)
    cdef i64[::1] nums = nums_arr
    cdef i64[::1] dens = dens_arr
    cdef Py_ssize_t i, j, k, l, pos = 0
    cdef i64 a, b, c, d
    with nogil:
        for i in range(start, stop):
            a = xs[i]
            for j in range(n):
                if j == i:
                    continue
                b = xs[j]
                for k in range(n):
                    if k == i or k == j:
                        continue
                    c = xs[k]
                    for l in range(n):
                        if l == i or l == j or l == k:
                            continue
                        d = xs[l]
                        _store((a - b) * (c - d), (a - c) * (b - d), nums, dens, pos)
                        pos += 1
    return nums_arr, dens_arr


def orbit_values(const i64[::1] xs, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j, k, l, pos = 0, count = 0
    for i in range(start, stop):
        # quadruples i<j<k<l with fixed i: C(n-1-i, 3)
        count += (n - 1 - i) * (n - 2 - i) * (n - 3 - i) // 6 if n - 1 - i >= 3 else 0
    nums_arr = np.empty(6 * count, dtype=np.int64)
    dens_arr = np.empty(6 * count, dtype=np.int64)
    cdef i64[::1] nums = nums_arr
    cdef i64[::1] dens = dens_arr
    cdef i64 a, b, c, d, p, q, g
    with nogil:
        for i in range(start, stop):
            a = xs[i]
            for j in range(i + 1, n):
                b = xs[j]
                for k in range(j + 1, n):
                    c = xs[k]
                    for l in range(k + 1, n):
                        d = xs[l]
                        p = (a - b) * (c - d)
                        q = (a - c) * (b - d)
                        g = _gcd(p, q)
                        p //= g
                        q //= g
                        if q < 0:
                            p = -p
                            q = -q
                        _store(p, q, nums, dens, pos)
                        _store(q, p, nums, dens, pos + 1)
                        _store(q - p, q, nums, dens, pos + 2)
                        _store(q, q - p, nums, dens, pos + 3)
                        _store(p - q, p, nums, dens, pos + 4)
                        _store(p, p - q, nums, dens, pos + 5)
                        pos += 6
    return nums_arr, dens_arr


def pinned_values(const i64[::1] xs, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t per = (n - 1) * (n - 2) if n >= 3 else 0
    cdef Py_ssize_t total = (stop - start) * per if stop > start else 0
    nums_arr = np.empty(total, dtype=np.int64)
    dens_arr = np.empty(total, dtype=np.int64)
    cdef i64[::1] nums = nums_arr
    cdef i64[::1] dens = dens_arr
    cdef Py_ssize_t i, j, k, pos = 0
    with nogil:
        for i in range(start, stop):
            for j in range(n):
                if j == i:
                    continue
                for k in range(n):
                    if k == i or k == j:
                        continue
                    _store(xs[i] - xs[j], xs[i] - xs[k], nums, dens, pos)
                    pos += 1
    return nums_arr, dens_arr


def pentuple_keys(const i64[::1] ids, Py_ssize_t n, Py_ssize_t start, Py_ssize_t stop, i64 m):
    """Keys x_id * m + y_id for ordered pentuples with first index in [start, stop).

    ``ids`` is the id of every ordered-quadruple value in ``quad_values`` order:
    consecutive blocks of n - 3 entries share the ordered triple (a, b, c).
    """
    cdef Py_ssize_t block = n - 3
    cdef Py_ssize_t triples_per_first = (n - 1) * (n - 2)
    cdef Py_ssize_t t0 = start * triples_per_first
    cdef Py_ssize_t t1 = stop * triples_per_first
    cdef Py_ssize_t total = (t1 - t0) * block * (block - 1) if t1 > t0 and block >= 2 else 0
    keys_arr = np.empty(total, dtype=np.int64)
    cdef i64[::1] keys = keys_arr
    cdef Py_ssize_t t, d, e, base, pos = 0
    if total == 0:
        return keys_arr
    with nogil:
        for t in range(t0, t1):
            base = t * block
            for d in range(block):
                for e in range(block):
                    if d == e:
                        continue
                    keys[pos] = ids[base + d] * m + ids[base + e]
                    pos += 1
    return keys_arr
