"""Deterministic chunked fan-out for the exact (pure Fraction) enumerations.

Work is split by the first index of the enumeration; results come back in
chunk order, so any commutative merge gives identical output for any worker
count.
"""

from concurrent.futures import ProcessPoolExecutor


def chunk_ranges(n, workers):
    workers = max(1, min(int(workers), n or 1))
    bounds = [round(i * n / workers) for i in range(workers + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(workers) if bounds[i] < bounds[i + 1]]


def fan_out(func, n, workers, *args):
    """Call ``func(*args, lo, hi)`` on each chunk of ``range(n)``; list of results in order."""
    chunks = chunk_ranges(n, workers)
    if len(chunks) <= 1:
        return [func(*args, lo, hi) for lo, hi in chunks]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        futures = [pool.submit(func, *args, lo, hi) for lo, hi in chunks]
        return [f.result() for f in futures]
