"""Hot enumeration kernels: compiled (Cython) when built, pure Python otherwise.

The backend is chosen once at import. Set ``CRL_PURE_PYTHON=1`` to force the
fallback. All cross-ratio statistics are invariant under affine maps, so a
finite set of rationals is first replaced by its integer image
``(a - min A) * lcm(denominators)``; sets whose image would overflow the
int64 guard (span >= 2**30) are left to the exact Fraction path.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import lcm

import numpy as np

from . import _pure

SPAN_LIMIT = 1 << 30

try:
    if os.environ.get("CRL_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python forced")
    from . import _core as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    """Return the kernel module: ``"compiled"``, ``"python"`` or the default."""
    if name is None:
        name = BACKEND
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    if name == "python":
        return _pure
    raise ValueError(f"unknown backend {name!r}")


def integer_image(values) -> np.ndarray | None:
    """Sorted int64 affine image of a finite rational set, or None if not eligible."""
    vals = list(values)
    if not vals or not all(type(v) is Fraction or type(v) is int for v in vals):
        return None
    den = lcm(*(Fraction(v).denominator for v in vals))
    lo = min(vals)
    ints = sorted(int((Fraction(v) - lo) * den) for v in vals)
    if ints[-1] >= SPAN_LIMIT:
        return None
    return np.array(ints, dtype=np.int64)


def _chunks(n_first: int, workers: int):
    workers = max(1, min(workers, n_first or 1))
    bounds = [round(i * n_first / workers) for i in range(workers + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(workers) if bounds[i] < bounds[i + 1]]


def _run(kernel, args_for, n_first, workers):
    chunks = _chunks(n_first, workers)
    if len(chunks) <= 1:
        return [kernel(*args_for(lo, hi)) for lo, hi in chunks]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(lambda c: kernel(*args_for(*c)), chunks))


def _concat_pairs(parts):
    if not parts:
        e = np.empty(0, dtype=np.int64)
        return e, e.copy()
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def quad_values(xs, workers=1, backend=None):
    k = get_backend(backend)
    return _concat_pairs(_run(k.quad_values, lambda lo, hi: (xs, lo, hi), len(xs), workers))


def orbit_values(xs, workers=1, backend=None):
    k = get_backend(backend)
    return _concat_pairs(_run(k.orbit_values, lambda lo, hi: (xs, lo, hi), len(xs), workers))


def pinned_values(xs, workers=1, backend=None):
    k = get_backend(backend)
    return _concat_pairs(_run(k.pinned_values, lambda lo, hi: (xs, lo, hi), len(xs), workers))


def pentuple_keys(ids, n, m, workers=1, backend=None):
    k = get_backend(backend)
    ids = np.ascontiguousarray(ids, dtype=np.int64)
    parts = _run(k.pentuple_keys, lambda lo, hi: (ids, n, lo, hi, m), n, workers)
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts)


def unique_fractions(nums, dens):
    """Deduplicate (num, den) rows. Returns (unique_nums, unique_dens, inverse, counts).

    Same output as ``np.unique(rows, axis=0, ...)`` (rows ordered by num, then
    den) but via one lexsort, which is several times faster.
    """
    if len(nums) == 0:
        e = np.empty(0, dtype=np.int64)
        return e, e, e, e
    order = np.lexsort((dens, nums))
    sn, sd = nums[order], dens[order]
    first = np.empty(len(sn), dtype=bool)
    first[0] = True
    np.not_equal(sn[1:], sn[:-1], out=first[1:])
    first[1:] |= sd[1:] != sd[:-1]
    starts = np.flatnonzero(first)
    inverse = np.empty(len(sn), dtype=np.int64)
    inverse[order] = np.cumsum(first) - 1
    counts = np.diff(np.append(starts, len(sn)))
    return sn[starts], sd[starts], inverse, counts


def to_fractions(nums, dens):
    return [Fraction(int(p), int(q)) for p, q in zip(nums.tolist(), dens.tolist())]
