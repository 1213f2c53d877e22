"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --sizes 10,20,40 --repeat 3

Rows marked "kernel" time the raw enumeration only; the others are end to end,
including the exact Fraction values handed back to the caller.
"""

import argparse
import gc
import random
import time
from fractions import Fraction

import numpy as np

from crlab import kernels
from crlab.crossratio import cross_ratio_count, cross_ratio_set
from crlab.moebius import pentuple_energy
from crlab.scalar import ScalarSet


def best_of(repeat, func):
    times = []
    for _ in range(repeat):
        gc.collect()
        t = time.perf_counter()
        func()
        times.append(time.perf_counter() - t)
    return min(times)


def _fingerprint(result):
    # keep only a digest so earlier results do not stay alive during timing
    if isinstance(result, tuple):
        return tuple(hash(np.asarray(r).tobytes()) for r in result)
    if isinstance(result, ScalarSet):
        return len(result), hash(result.items)
    return result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,20,30")
    ap.add_argument("--energy-sizes", default="8,12,16")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--include-exact", action="store_true", help="also time the Fraction path")
    args = ap.parse_args(argv)

    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    print(f"default backend: {kernels.BACKEND}")
    header = f"{'task':<16}{'n':>5}" + "".join(f"{b:>12}" for b in backends + ["exact"]) + f"{'speedup':>10}"
    print(header)

    rng = random.Random(0)
    w = args.workers
    jobs = []
    for n in map(int, args.sizes.split(",")):
        jobs.append(("orbit kernel", n, lambda A, xs, b: kernels.orbit_values(xs, w, b), False))
        jobs.append(("|C[A]|", n, lambda A, xs, b: cross_ratio_count(A, workers=w, backend=b), True))
        jobs.append(("C[A] values", n, lambda A, xs, b: cross_ratio_set(A, workers=w, backend=b), True))
    for n in map(int, args.energy_sizes.split(",")):
        jobs.append(("P", n, lambda A, xs, b: pentuple_energy(A, workers=w, backend=b).P, True))

    for task, n, func, has_exact in jobs:
        # integer sets keep every backend eligible (no int64 overflow)
        A = ScalarSet(Fraction(v) for v in rng.sample(range(-50 * n, 50 * n), n))
        xs = kernels.integer_image(A)
        results, times = set(), {}
        run = backends + (["exact"] if has_exact and args.include_exact else [])
        for b in run:
            times[b] = best_of(args.repeat, lambda: results.add(_fingerprint(func(A, xs, b))))
        assert len(results) == 1, f"backends disagree on {task} at n={n}"
        speed = f"{times['python'] / times['compiled']:.1f}x" if "compiled" in times else "-"
        cells = "".join(f"{times[b]:>11.4f}s" if b in times else f"{'-':>12}" for b in backends + ["exact"])
        print(f"{task:<16}{n:>5}{cells}{speed:>10}")


if __name__ == "__main__":
    main()
