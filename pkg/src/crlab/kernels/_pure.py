"""Pure-Python twins of the compiled kernels in ``_core.pyx``.

Same signatures, same output order, same reduced (numerator, denominator)
convention. Used when the extension is not built or ``CRL_PURE_PYTHON=1``.
"""

from math import gcd

import numpy as np


def _reduce(num, den):
    g = gcd(num, den)
    num //= g
    den //= g
    if den < 0:
        return -num, -den
    return num, den


def _arrays(pairs):
    if not pairs:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    arr = np.array(pairs, dtype=np.int64)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


def quad_values(xs, start, stop):
    xs = [int(v) for v in xs]
    n = len(xs)
    out = []
    append = out.append
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
                    append(_reduce((a - b) * (c - d), (a - c) * (b - d)))
    return _arrays(out)


def orbit_values(xs, start, stop):
    xs = [int(v) for v in xs]
    n = len(xs)
    out = []
    extend = out.extend
    for i in range(start, stop):
        a = xs[i]
        for j in range(i + 1, n):
            b = xs[j]
            for k in range(j + 1, n):
                c = xs[k]
                for l in range(k + 1, n):
                    d = xs[l]
                    p, q = _reduce((a - b) * (c - d), (a - c) * (b - d))
                    extend((
                        (p, q),
                        _reduce(q, p),
                        _reduce(q - p, q),
                        _reduce(q, q - p),
                        _reduce(p - q, p),
                        _reduce(p, p - q),
                    ))
    return _arrays(out)


def pinned_values(xs, start, stop):
    xs = [int(v) for v in xs]
    n = len(xs)
    out = []
    for i in range(start, stop):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                out.append(_reduce(xs[i] - xs[j], xs[i] - xs[k]))
    return _arrays(out)


def pentuple_keys(ids, n, start, stop, m):
    block = n - 3
    per_first = (n - 1) * (n - 2)
    ids = ids.tolist() if hasattr(ids, "tolist") else list(ids)
    keys = []
    append = keys.append
    if block < 2:
        return np.empty(0, dtype=np.int64)
    for t in range(start * per_first, stop * per_first):
        row = ids[t * block:(t + 1) * block]
        for d, xd in enumerate(row):
            xm = xd * m
            for e, ye in enumerate(row):
                if d != e:
                    append(xm + ye)
    return np.array(keys, dtype=np.int64)
