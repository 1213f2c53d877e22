"""Growth-exponent sweeps over set families and annealing search for small statistics.

All statistics are exact integers; only the log-log fit and the normalised
objective are floating point, and only for display.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .crossratio import cross_ratio_count, cross_ratio_set, pinned_cross_ratio_set
from .errors import BudgetExceeded, ConfigError
from .geometry import Point, PointSet, RationalDirection, SignedSqrt, grid, omega, omega_set
from .moebius import pentuple_energy, quadruple_energy
from .parallel import fan_out
from .scalar import ScalarSet, get_field
from .setalg import difference, productset, sumset

__all__ = [
    "FamilySpec",
    "ExponentFit",
    "fit_exponent",
    "STATISTICS",
    "statistic_cost",
    "compute_statistic",
    "build_family",
    "sweep",
    "SearchResult",
    "search_extremal",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8

FAMILY_KINDS = ("ap", "gp", "random", "union-of-lines", "custom")


@dataclass
class FamilySpec:
    kind: str
    sizes: list
    seed: int = 0
    difference: Fraction = Fraction(1)
    ratio: Fraction = Fraction(2)
    start: Fraction = Fraction(1)
    height: int = 50
    lines_t: int = 2  # |T| per line for union-of-lines
    values: tuple = ()
    mode: str = "rational"

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ConfigError(f"unknown family {self.kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
        if not self.sizes:
            raise ConfigError("size range is empty")
        self.ratio = Fraction(self.ratio)
        if self.kind == "gp" and self.ratio in (0, 1, -1):
            raise ConfigError("GP ratio must not be 0 or +-1")

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "sizes": list(self.sizes),
            "seed": self.seed,
            "difference": str(self.difference),
            "ratio": str(self.ratio),
            "start": str(self.start),
            "height": self.height,
            "mode": self.mode,
        }


def build_family(spec: FamilySpec, n: int):
    """The size-n member of a family: a ScalarSet, or a PointSet for union-of-lines."""
    fld = get_field(spec.mode)
    if spec.kind == "ap":
        return ScalarSet(fld.coerce(spec.start + i * Fraction(spec.difference)) for i in range(n))
    if spec.kind == "gp":
        return ScalarSet(fld.coerce(spec.start * spec.ratio**i) for i in range(n))
    if spec.kind == "random":
        rng = random.Random(f"{spec.seed}:{n}")
        return fld.random_set(rng, n, spec.height)
    if spec.kind == "custom":
        if n > len(spec.values):
            raise ConfigError(f"custom family has {len(spec.values)} values, size {n} requested")
        return ScalarSet(spec.values[:n])
    # union-of-lines: n directions t = i/n and a GP of radii
    dirs = [RationalDirection(Fraction(i, n)) for i in range(n)]
    radii = [spec.ratio**j for j in range(spec.lines_t)]
    return PointSet(Point(r * d.cos, r * d.sin) for r in radii for d in dirs)


def _sine_products(A: ScalarSet) -> int:
    """|S S| for S = sin(Phi - Phi) minus 0, Phi the directions to (a, 1), a in A."""
    pts = [Point(a, Fraction(1)) for a in A]
    S = {SignedSqrt.sine(p, q) for p in pts for q in pts if p != q}
    S.discard(SignedSqrt(0, 0))
    return len({s * t for s in S for t in S})


def _as_points(X):
    return X if isinstance(X, PointSet) else grid(X)


STATISTICS = {
    "C": ("|C[A]|", lambda X, w: cross_ratio_count(X, workers=w)),
    "R": ("|R[A]|", lambda X, w: len(pinned_cross_ratio_set(X, workers=w))),
    "Q": ("quadruple energy", lambda X, w: quadruple_energy(X, workers=w)),
    "P": ("pentuple energy", lambda X, w: pentuple_energy(X, workers=w).P),
    "A+A": ("|A+A|", lambda X, w: len(sumset(X, X))),
    "AA": ("|A A|", lambda X, w: len(productset(X, X))),
    "CC": ("|C C|", lambda X, w: len(productset(*(2 * [cross_ratio_set(X, workers=w)])))),
    "C+C": ("|C+C|", lambda X, w: len(sumset(*(2 * [cross_ratio_set(X, workers=w)])))),
    "C-C": ("|C-C|", lambda X, w: len(difference(*(2 * [cross_ratio_set(X, workers=w)])))),
    "omega": ("|omega[E]|", lambda X, w: len(omega_set(_as_points(X)))),
    "SS": ("|S S|", lambda X, w: _sine_products(X)),
}

_POINT_STATS = {"omega"}


def statistic_cost(statistic: str, n: int) -> float:
    """Rough count of elementary operations; used only for the budget guard."""
    costs = {
        "C": n**4 / 4,
        "R": n**3,
        "Q": n**4 / 4,
        "P": float(n) ** 5,
        "A+A": n**2,
        "AA": n**2,
        "CC": float(n) ** 6,
        "C+C": float(n) ** 6,
        "C-C": float(n) ** 6,
        "omega": float(n) ** 4,
        "SS": float(n) ** 4,
    }
    if statistic not in costs:
        raise ConfigError(f"unknown statistic {statistic!r}; expected one of {', '.join(costs)}")
    return float(costs[statistic])


def compute_statistic(statistic: str, X, workers=1) -> int:
    if statistic not in STATISTICS:
        raise ConfigError(f"unknown statistic {statistic!r}")
    if isinstance(X, PointSet) and statistic not in _POINT_STATS:
        raise ConfigError(f"statistic {statistic!r} needs a scalar family")
    return int(STATISTICS[statistic][1](X, workers))


@dataclass
class ExponentFit:
    samples: list
    slope: float
    intercept: float
    residual: float

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "residual": self.residual}


def fit_exponent(samples) -> ExponentFit:
    """Least-squares slope of log(value) against log(n)."""
    samples = [(int(n), int(v)) for n, v in samples]
    if len(samples) < 3:
        raise ValueError("need at least three samples to fit an exponent")
    if any(n <= 0 or v <= 0 for n, v in samples):
        raise ValueError("samples must be positive")
    x = np.log([n for n, _ in samples])
    y = np.log([v for _, v in samples])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ExponentFit(samples, float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))))


def sweep(spec: FamilySpec, statistic: str, *, budget=DEFAULT_BUDGET, workers=1) -> ExponentFit:
    estimate = sum(statistic_cost(statistic, n) for n in spec.sizes)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    samples = []
    for n in spec.sizes:
        X = build_family(spec, n)
        samples.append((n, compute_statistic(statistic, X, workers)))
    return fit_exponent(samples)


# annealing ---------------------------------------------------------------


@dataclass
class SearchResult:
    statistic: str
    n: int
    exponent: float
    best: object
    best_value: int
    trace: list = field(repr=False)
    seed: int = 0
    restart: int = 0

    @property
    def objective(self) -> float:
        return self.best_value / self.n**self.exponent


def _plane_ok(points) -> bool:
    """Distinct, off the origin, and not all on one line through the origin."""
    if len(set(points)) != len(points) or any(p.x == 0 and p.y == 0 for p in points):
        return False
    return any(omega(points[0], q) != 0 for q in points[1:])


def _anneal(statistic, n, iterations, height, seed, restart, mode, t0):
    rng = random.Random(f"{seed}:{restart}")
    fld = get_field(mode)
    plane = statistic in _POINT_STATS

    def rand_point():
        return Point(fld.random(rng, height), fld.random(rng, height))

    if plane:
        state = []
        while len(state) < n or not _plane_ok(state):
            if len(state) == n:
                state = []
            p = rand_point()
            if p not in state and not (p.x == 0 and p.y == 0):
                state.append(p)
        evaluate = lambda s: compute_statistic(statistic, PointSet(s))  # noqa: E731
    else:
        state = list(fld.random_set(rng, n, height))
        evaluate = lambda s: compute_statistic(statistic, ScalarSet(s))  # noqa: E731

    current = evaluate(state)
    best, best_state = current, list(state)
    trace = []
    for it in range(iterations):
        temp = t0 * (1e-3 / t0) ** (it / max(iterations - 1, 1))
        i = rng.randrange(n)
        candidate = list(state)
        if plane:
            candidate[i] = rand_point()
            if not _plane_ok(candidate):
                trace.append(best)
                continue
        else:
            v = fld.random(rng, height)
            if v in state:
                trace.append(best)
                continue
            candidate[i] = v
        value = evaluate(candidate)
        delta = (value - current) / max(current, 1)
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            state, current = candidate, value
            if value < best:
                best, best_state = value, list(candidate)
        trace.append(best)
    final = PointSet(best_state) if plane else ScalarSet(best_state)
    return best, restart, final, trace


def _anneal_chunk(statistic, n, iterations, height, seed, mode, t0, lo, hi):
    return [_anneal(statistic, n, iterations, height, seed, r, mode, t0) for r in range(lo, hi)]


def search_extremal(
    statistic: str,
    n: int,
    exponent: float = 0.0,
    *,
    iterations: int = 1000,
    seed: int = 0,
    height: int = 10,
    restarts: int = 1,
    budget=DEFAULT_BUDGET,
    workers: int = 1,
    mode: str = "rational",
    t0: float = 0.5,
) -> SearchResult:
    """Simulated annealing minimising statistic / n**exponent over sets of size n.

    Moves replace one element (or one point, for plane statistics) by a random
    rational of bounded height. Restarts use seeds derived from ``seed``; the
    winner is the smallest value, ties broken by restart index.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    estimate = statistic_cost(statistic, n) * (iterations + 1) * restarts
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    runs = []
    for part in fan_out(_anneal_chunk, restarts, workers, statistic, n, iterations, height, seed, mode, t0):
        runs.extend(part)
    value, restart, best, trace = min(runs, key=lambda r: (r[0], r[1]))
    return SearchResult(statistic, n, exponent, best, value, trace, seed, restart)
