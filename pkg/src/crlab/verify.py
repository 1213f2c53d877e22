"""Exact-identity and oracle-equivalence suites.

Each check takes a count and a seed, runs with exact arithmetic and returns a
:class:`CheckResult`. A failed identity is reported, never swallowed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .crossratio import (
    cross_ratio,
    cross_ratio_set,
    identity_check_pentuple,
    is_orbit_closed,
    ordered_cross_ratio_set,
)
from .errors import CrlabError, IdentityViolation, NotCongruent
from .geometry import (
    Hyperbola,
    Line,
    PointSet,
    RationalDirection,
    count_incidences,
    directions,
    grid,
    solution_count_I,
    union_of_lines,
    verify_area_identity,
)
from .moebius import (
    IDENTITY,
    MoebiusMap,
    congruent_pentuple_pairs,
    det,
    falling,
    pentuple_energy,
    quadruple_energy,
    recover_congruence,
    richness,
    _congruence_matrix,
)
from .scalar import GAUSSIAN, INF, RATIONAL, ScalarSet
from .setalg import plunnecke_check

__all__ = ["CheckResult", "CHECKS", "run_checks", "random_moebius"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: {self.cases} cases in {self.seconds:.1f}s{extra}"


def _distinct(rng, field, k, height, *, allow_inf=False):
    out = set()
    if allow_inf and rng.random() < 0.2:
        out.add(INF)
    while len(out) < k:
        out.add(field.random(rng, height))
    vals = list(out)
    rng.shuffle(vals)
    return vals


def random_moebius(rng, field=RATIONAL, height=6) -> MoebiusMap:
    while True:
        a, b, c, d = (field.random(rng, height) for _ in range(4))
        if a * d - b * c != 0:
            return MoebiusMap(a, b, c, d)


def check_pentuple_identities(count=10_000, seed=0):
    """x/y = [d,c,b,e] and (x-1)/(y-1) = [a,d,e,b] on random pentuples, both modes."""
    rng = random.Random(seed)
    n = 0
    for field in (RATIONAL, GAUSSIAN):
        for _ in range(count):
            identity_check_pentuple(*_distinct(rng, field, 5, 20, allow_inf=True))
            n += 1
    return n, "rational and gaussian, 20% with inf"


def check_congruence_roundtrip(count=10_000, seed=0):
    """recover_congruence reproduces a random tau; non-congruent pairs are rejected."""
    rng = random.Random(seed)
    for i in range(count):
        field = GAUSSIAN if i % 4 == 3 else RATIONAL
        while True:
            tau = random_moebius(rng, field)
            q = _distinct(rng, field, 4, 20)
            img = [tau(x) for x in q]
            if INF not in img:
                break
        if det(_congruence_matrix(q, img)) != 0:
            raise IdentityViolation(f"nonzero determinant for congruent pair {q}")
        got = recover_congruence(q, img)
        if got != tau or [got(x) for x in q] != img:
            raise IdentityViolation(f"recovered {got}, expected {tau}")
    rejected = 0
    while rejected < count:
        q = _distinct(rng, RATIONAL, 4, 20)
        q2 = _distinct(rng, RATIONAL, 4, 20)
        if cross_ratio(*q) == cross_ratio(*q2):
            continue
        try:
            recover_congruence(q, q2)
        except NotCongruent:
            rejected += 1
        else:
            raise IdentityViolation(f"{q} and {q2} reported congruent")
    return 2 * count, f"{count} congruent + {count} non-congruent"


def check_orbit_symmetry(count=100, seed=0):
    """C[A] = 1/C[A] and C[A] = 1 - C[A] for random A with 4 <= |A| <= 12."""
    rng = random.Random(seed)
    for i in range(count):
        field = GAUSSIAN if i % 5 == 4 else RATIONAL
        A = ScalarSet(_distinct(rng, field, rng.randint(4, 12), 30, allow_inf=True))
        if not is_orbit_closed(cross_ratio_set(A)):
            raise IdentityViolation(f"C[A] not closed under 1/x and 1-x for {A}")
    return count, ""


def check_area_identity(count=100, seed=0):
    """Sine-quotient form of the cross-ratio and C[A] in (SS)/(SS) on random lines."""
    rng = random.Random(seed)
    for _ in range(count):
        while True:
            a, b, c = (RATIONAL.random(rng, 9) for _ in range(3))
            if (a != 0 or b != 0) and c != 0:
                break
        line = Line(a, b, c)
        A = ScalarSet(_distinct(rng, RATIONAL, rng.randint(4, 8), 12))
        rep = verify_area_identity(line, A)
        if rep.cross_ratios != cross_ratio_set(A):
            raise IdentityViolation("sine quotients do not reproduce C[A]")
    return count, "lines with 4..8 points"


def check_union_of_lines(count=100, seed=0):
    """omega[E] = TT sin(Phi - Phi) for random unions of lines."""
    rng = random.Random(seed)
    for i in range(count):
        phi = {RationalDirection(RATIONAL.random(rng, 7)) for _ in range(rng.randint(1, 6))}
        size_t = rng.randint(1, 8)
        if i % 2:
            r = Fraction(rng.randint(2, 5), rng.randint(1, 3))
            T = [r**j for j in range(size_t)]
        else:
            T = {Fraction(rng.randint(1, 20), rng.randint(1, 6)) for _ in range(size_t)}
        union_of_lines(phi, T)
    return count, "|Phi| <= 6, |T| <= 8"


def check_plunnecke(count=1000, seed=0):
    """|kA - lA| <= K^(k+l)|A| for (k, l) in {(1,1), (2,0), (2,1), (3,2)}."""
    rng = random.Random(seed)
    cases = 0
    for i in range(count):
        size = rng.randint(1, 7)
        if i % 2:
            A = ScalarSet(Fraction(v) for v in rng.sample(range(16), size))
        else:
            A = ScalarSet(_distinct(rng, RATIONAL, size, 6))
        for k, l in ((1, 1), (2, 0), (2, 1), (3, 2)):
            plunnecke_check(A, k, l)
            cases += 1
    return cases, ""


def check_energy_oracle(count=20, seed=0):
    """P from the (x, y) histogram equals brute-force congruent pentuple pairs."""
    rng = random.Random(seed)
    for i in range(count):
        A = ScalarSet(Fraction(v) for v in rng.sample(range(10), 5 if i % 2 == 0 else 6))
        fast = pentuple_energy(A).P
        brute = congruent_pentuple_pairs(A)
        if fast != brute:
            raise IdentityViolation(f"P = {fast} but brute force gives {brute} for {A}")
    return count, "A in {0..9}, |A| in {5, 6}"


def _random_curves(rng, pts, k):
    curves = []
    while len(curves) < k:
        p, q = rng.sample(pts, 2)
        if rng.random() < 0.5:
            if p != q:
                curves.append(Line(q.y - p.y, p.x - q.x, (q.y - p.y) * p.x + (p.x - q.x) * p.y))
        else:
            # hyperbola y (x + delta) = alpha x + beta through p, plus random parameters
            alpha = Fraction(rng.randint(-5, 5))
            delta = Fraction(rng.randint(-5, 5))
            beta = p.y * (p.x + delta) - alpha * p.x
            curves.append(Hyperbola(alpha, delta, beta))
    return curves


def check_incidence_oracle(count=100, seed=0):
    """Hash-indexed incidence count equals the brute-force scan."""
    rng = random.Random(seed)
    for _ in range(count):
        side = rng.randint(2, 20)
        A = ScalarSet(Fraction(v) for v in rng.sample(range(-10, 30), side))
        pts = list(grid(A).items)
        if len(pts) > 400:
            pts = rng.sample(pts, 400)
        P = PointSet(pts)
        curves = _random_curves(rng, list(P), rng.randint(1, 200))
        fast = count_incidences(P, curves)
        brute = count_incidences(P, curves, method="brute")
        if fast.per_curve != brute.per_curve:
            raise IdentityViolation("incidence fast path disagrees with brute force")
    return count, "<= 400 points, <= 200 lines/hyperbolae"


def check_solution_count_oracle(count=6, seed=0):
    """Hash-join count of r'y' - r(y-1) = 1 equals the |C|^4 brute force, |C| <= 40."""
    rng = random.Random(seed)
    sizes = []
    for i in range(count):
        if i % 2 == 0:
            base = [Fraction(v) for v in rng.sample(range(8), 4 + (i // 2) % 2)]
            C = cross_ratio_set(base)
        else:
            C = ScalarSet(_distinct(rng, RATIONAL, (10, 25, 40)[(i // 2) % 3], 6))
        if len(C) > 40:
            C = ScalarSet(list(C)[:40])
        sizes.append(len(C))
        if solution_count_I(C) != solution_count_I(C, method="brute"):
            raise IdentityViolation(f"hash-join and brute-force counts differ for |C| = {len(C)}")
    return count, f"|C| in {sorted(sizes)}"


def check_orbit_union_oracle(count=20, seed=0):
    """Orbit-union C[A] equals the ordered-quadruple enumeration, |A| <= 12."""
    rng = random.Random(seed)
    for i in range(count):
        size = 4 + i % 9
        A = ScalarSet(_distinct(rng, RATIONAL, size, 25, allow_inf=i % 3 == 0))
        ordered = ordered_cross_ratio_set(A)
        if cross_ratio_set(A) != ordered or cross_ratio_set(A, backend="exact") != ordered:
            raise IdentityViolation(f"orbit-union C[A] differs for {A}")
    return count, "|A| = 4..12"


def check_golden_values(count=10, seed=0):
    """|C[{0,1,2,3}]| = 6 with the listed values, Q = 96, identity richness, 3x3 directions."""
    A = ScalarSet.of(0, 1, 2, 3)
    expected = ScalarSet.of("1/4", 4, "3/4", "4/3", -3, "-1/3")
    if cross_ratio_set(A) != expected:
        raise IdentityViolation(f"C[{{0,1,2,3}}] = {cross_ratio_set(A)}")
    if quadruple_energy(A) != 96:
        raise IdentityViolation(f"Q = {quadruple_energy(A)}")
    rng = random.Random(seed)
    for _ in range(count):
        B = ScalarSet(_distinct(rng, RATIONAL, rng.randint(4, 15), 20))
        if richness(IDENTITY, B) != falling(len(B), 4):
            raise IdentityViolation("identity richness is not the falling factorial")
    if len(directions(grid(ScalarSet.of(1, 2, 3)))) != 7:
        raise IdentityViolation("3x3 grid does not span 7 directions")
    return count + 3, ""


CHECKS = {
    "1a pentuple identities": check_pentuple_identities,
    "1b congruence round-trip": check_congruence_roundtrip,
    "1c orbit symmetry": check_orbit_symmetry,
    "1d sine/area identity": check_area_identity,
    "1e union of lines": check_union_of_lines,
    "1f Plunnecke": check_plunnecke,
    "2a energy oracle": check_energy_oracle,
    "2b incidence oracle": check_incidence_oracle,
    "2c solution-count oracle": check_solution_count_oracle,
    "2d orbit-union oracle": check_orbit_union_oracle,
    "3 golden values": check_golden_values,
}

QUICK_COUNTS = {
    "1a pentuple identities": 1000,
    "1b congruence round-trip": 1000,
    "1c orbit symmetry": 30,
    "1d sine/area identity": 20,
    "1e union of lines": 30,
    "1f Plunnecke": 200,
    "2a energy oracle": 4,
    "2b incidence oracle": 20,
    "2c solution-count oracle": 2,
    "2d orbit-union oracle": 9,
    "3 golden values": 10,
}


def run_one(name, seed=0, count=None) -> CheckResult:
    func = CHECKS[name]
    t = time.perf_counter()
    try:
        cases, detail = func(seed=seed) if count is None else func(count, seed=seed)
        ok = True
    except (CrlabError, AssertionError) as exc:
        cases, detail, ok = 0, f"{type(exc).__name__}: {exc}", False
    return CheckResult(name, ok, cases, detail, time.perf_counter() - t)


def run_checks(*, seed=0, quick=False, names=None) -> list:
    results = []
    for name in names or CHECKS:
        count = QUICK_COUNTS[name] if quick else None
        results.append(run_one(name, seed, count))
    return results
