"""Sum and product sets, Pluennecke-Ruzsa bookkeeping and growth reports."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .crossratio import _as_set, is_orbit_closed
from .errors import IdentityViolation
from .scalar import INF, ScalarSet

__all__ = [
    "sumset",
    "difference",
    "productset",
    "ratioset",
    "reciprocals",
    "iterated_sum",
    "iterated_product",
    "sum_difference",
    "GrowthReport",
    "growth_report",
    "growth_statistics",
    "PlunneckeReport",
    "plunnecke_check",
    "RefineReport",
    "thin_plunnecke_refine",
]


def _finite(A):
    return [a for a in _as_set(A) if a is not INF]


def sumset(A, B) -> ScalarSet:
    B = _finite(B)
    return ScalarSet(a + b for a in _finite(A) for b in B)


def difference(A, B) -> ScalarSet:
    B = _finite(B)
    return ScalarSet(a - b for a in _finite(A) for b in B)


def productset(A, B) -> ScalarSet:
    B = _finite(B)
    return ScalarSet(a * b for a in _finite(A) for b in B)


def ratioset(A, B) -> ScalarSet:
    """A/B with zero denominators skipped."""
    B = [b for b in _finite(B) if b != 0]
    return ScalarSet(a / b for a in _finite(A) for b in B)


def reciprocals(A) -> ScalarSet:
    """Finite reciprocals 1/a, a != 0."""
    return ScalarSet(1 / a for a in _finite(A) if a != 0)


def _fold(A, k, op) -> ScalarSet:
    if k < 1:
        raise ValueError("k must be at least 1")
    out = _as_set(A)
    for _ in range(k - 1):
        out = op(out, A)
    return out


def iterated_sum(A, k) -> ScalarSet:
    """kA, the k-fold sumset."""
    return _fold(A, k, sumset)


def iterated_product(A, k) -> ScalarSet:
    """A^k, the k-fold product set."""
    return _fold(A, k, productset)


def sum_difference(A, k, l) -> ScalarSet:
    """kA - lA (l = 0 gives kA)."""
    kA = iterated_sum(A, k)
    if l == 0:
        return kA
    return difference(kA, iterated_sum(A, l))


@dataclass(frozen=True)
class GrowthReport:
    op: str
    size_in: int
    size_out: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.size_out, self.size_in)

    @property
    def exponent(self) -> float:
        """log|out| / log|in|, display only; nan when |in| = 1."""
        if self.size_in <= 1:
            return math.nan
        return math.log(self.size_out) / math.log(self.size_in)

    def row(self, set_id):
        exp = self.exponent
        return [set_id, self.op, self.size_in, self.size_out, str(self.ratio),
                "nan" if math.isnan(exp) else f"{exp:.6f}"]


def growth_report(op: str, A, out) -> GrowthReport:
    return GrowthReport(op, len(_as_set(A)), len(out))


def growth_statistics(C) -> dict:
    """Sizes of C+C, C-C, C*C. Records whether C = 1/C = 1 - C before measuring."""
    C = _as_set(C)
    if not len(C):
        raise ValueError("C must be nonempty")
    return {
        "orbit_closed": is_orbit_closed(C),
        "reports": [
            growth_report("C+C", C, sumset(C, C)),
            growth_report("C-C", C, difference(C, C)),
            growth_report("C*C", C, productset(C, C)),
        ],
    }


@dataclass(frozen=True)
class PlunneckeReport:
    k: int
    l: int
    size_A: int
    K: Fraction
    size_kl: int
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.size_kl <= self.bound


def plunnecke_check(A, k, l) -> PlunneckeReport:
    """|kA - lA| against K^(k+l)|A| with K = |A+A|/|A| kept exact.

    Raises IdentityViolation if the inequality ever fails.
    """
    A = _as_set(A)
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    n = len(A)
    K = Fraction(len(sumset(A, A)), n)
    size = len(sum_difference(A, k, l))
    report = PlunneckeReport(k, l, n, K, size, K ** (k + l) * n)
    if not report.holds:
        raise IdentityViolation(f"|{k}A-{l}A| = {size} > K^{k + l}|A| = {report.bound}")
    return report


@dataclass(frozen=True)
class RefineReport:
    subset: ScalarSet
    size: int
    Kk_bound: Fraction
    exhaustive: bool


def thin_plunnecke_refine(A, k, *, exhaustive_limit=12) -> RefineReport:
    """Find A' in A with |A'| >= 0.9|A| and |A' + kA| as small as possible.

    Exhaustive for |A| <= exhaustive_limit; otherwise greedy removal of the
    element whose deletion shrinks A' + kA the most. Heuristic witness only.
    """
    A = _as_set(A)
    if k < 1:
        raise ValueError("k must be at least 1")
    n = len(A)
    kA = iterated_sum(A, k)
    K = Fraction(len(sumset(A, A)), n)
    floor_size = math.ceil(Fraction(9, 10) * n)
    items = A.items

    def cost(sub):
        return len(sumset(sub, kA))

    if n <= exhaustive_limit:
        best = A
        best_cost = cost(A)
        for size in range(floor_size, n):
            for sub in combinations(items, size):
                c = cost(sub)
                if c < best_cost:
                    best, best_cost = ScalarSet(sub), c
        return RefineReport(best, best_cost, K**k * n, True)

    current = list(items)
    current_cost = cost(current)
    while len(current) - 1 >= floor_size:
        trials = [(cost(current[:i] + current[i + 1:]), i) for i in range(len(current))]
        c, i = min(trials)
        if c >= current_cost:
            break
        current_cost = c
        del current[i]
    return RefineReport(ScalarSet(current), current_cost, K**k * n, False)
