"""Cross-ratios, their six-element symmetry orbits and the sets C[A], R[A].

``cross_ratio(a, b, c, d) = (a-b)(c-d) / ((a-c)(b-d))`` on the projective line,
with the point at infinity handled as a limit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations

from . import kernels
from .errors import DegenerateTuple, IdentityViolation, SetTooSmall
from .parallel import fan_out
from .scalar import INF, ScalarSet

__all__ = [
    "cross_ratio",
    "orbit",
    "cross_ratio_set",
    "cross_ratio_count",
    "ordered_cross_ratio_set",
    "cross_ratio_histogram",
    "pinned_cross_ratio_set",
    "identity_check_pentuple",
    "PentupleReport",
    "is_orbit_closed",
]


def _check_distinct(*pts):
    if len(set(pts)) != len(pts):
        raise DegenerateTuple(f"entries must be pairwise distinct: {pts}")


def cross_ratio(a, b, c, d):
    """Cross-ratio of four pairwise distinct points of the projective line.

    >>> from fractions import Fraction as F
    >>> cross_ratio(F(0), F(1), F(2), F(3))
    Fraction(1, 4)
    """
    _check_distinct(a, b, c, d)
    # Each factor pair containing infinity tends to +1 or -1.
    if a is INF:
        return (c - d) / (b - d)
    if b is INF:
        return (d - c) / (a - c)
    if c is INF:
        return (b - a) / (b - d)
    if d is INF:
        return (a - b) / (a - c)
    return (a - b) * (c - d) / ((a - c) * (b - d))


def _orbit_values(lam):
    one = lam - lam + 1
    inv = one / lam
    return (lam, inv, one - lam, one / (one - lam), (lam - one) / lam, lam / (lam - one))


def orbit(lam) -> ScalarSet:
    """The anharmonic orbit of ``lam`` under the 24 argument permutations."""
    if lam is INF or lam == 0 or lam == 1:
        raise DegenerateTuple(f"{lam} is not the cross-ratio of distinct points")
    return ScalarSet(_orbit_values(lam))


def _require(A, k):
    if len(A) < k:
        raise SetTooSmall(f"need at least {k} elements, got {len(A)}")


def _as_set(A) -> ScalarSet:
    return A if isinstance(A, ScalarSet) else ScalarSet(A)


def _orbit_chunk(items, lo, hi):
    out = set()
    n = len(items)
    for i in range(lo, hi):
        for j, k, l in combinations(range(i + 1, n), 3):
            out.update(_orbit_values(cross_ratio(items[i], items[j], items[k], items[l])))
    return out


def _histogram_chunk(items, lo, hi):
    # Every orbit slot stands for 4 of the 24 orderings of an unordered quadruple.
    hist = Counter()
    n = len(items)
    for i in range(lo, hi):
        for j, k, l in combinations(range(i + 1, n), 3):
            for v in _orbit_values(cross_ratio(items[i], items[j], items[k], items[l])):
                hist[v] += 4
    return hist


def _use_kernel(A: ScalarSet, backend):
    if backend == "exact":
        return None
    xs = kernels.integer_image(A)
    if xs is None and backend in ("compiled", "python"):
        raise ValueError(f"set is not eligible for the {backend} kernel backend")
    return xs


def cross_ratio_set(A, *, workers=1, backend=None) -> ScalarSet:
    """C[A]: every cross-ratio of an ordered quadruple of distinct elements of ``A``.

    Computed from unordered quadruples and their orbits. ``A`` may contain
    :data:`INF`. ``backend`` is ``None`` (auto), ``"exact"``, ``"compiled"``
    or ``"python"``.
    """
    A = _as_set(A)
    _require(A, 4)
    xs = _use_kernel(A, backend)
    if xs is not None:
        nums, dens = kernels.orbit_values(xs, workers, backend if backend != "exact" else None)
        un, ud, _, _ = kernels.unique_fractions(nums, dens)
        return ScalarSet(kernels.to_fractions(un, ud))
    parts = fan_out(_orbit_chunk, len(A), workers, A.items)
    return ScalarSet(set().union(*parts))


def cross_ratio_count(A, *, workers=1, backend=None) -> int:
    """|C[A]| without materialising the values when the kernel path applies."""
    A = _as_set(A)
    _require(A, 4)
    xs = _use_kernel(A, backend)
    if xs is None:
        return len(cross_ratio_set(A, workers=workers, backend="exact"))
    nums, dens = kernels.orbit_values(xs, workers, backend if backend != "exact" else None)
    return len(kernels.unique_fractions(nums, dens)[0])


def ordered_cross_ratio_set(A) -> ScalarSet:
    """Reference enumeration over all ordered quadruples (24x slower)."""
    A = _as_set(A)
    _require(A, 4)
    return ScalarSet(cross_ratio(*q) for q in permutations(A.items, 4))


def cross_ratio_histogram(A, *, workers=1, backend=None) -> Counter:
    """Multiplicity of each value over the |A|(|A|-1)(|A|-2)(|A|-3) ordered quadruples."""
    A = _as_set(A)
    _require(A, 4)
    xs = _use_kernel(A, backend)
    if xs is not None:
        nums, dens = kernels.orbit_values(xs, workers, backend if backend != "exact" else None)
        un, ud, _, counts = kernels.unique_fractions(nums, dens)
        return Counter(dict(zip(kernels.to_fractions(un, ud), (4 * c for c in counts.tolist()))))
    total = Counter()
    for part in fan_out(_histogram_chunk, len(A), workers, A.items):
        total.update(part)
    return total


def pinned_cross_ratio_set(A, *, workers=1, backend=None) -> ScalarSet:
    """R[A] = {(a-b)/(a-c)}: cross-ratios with the last point pinned at infinity."""
    A = _as_set(A)
    _require(A, 3)
    if A.has_infinity():
        raise ValueError("pinned cross-ratio set is defined for finite scalars only")
    xs = _use_kernel(A, backend)
    if xs is not None:
        nums, dens = kernels.pinned_values(xs, workers, backend if backend != "exact" else None)
        un, ud, _, _ = kernels.unique_fractions(nums, dens)
        return ScalarSet(kernels.to_fractions(un, ud))
    return ScalarSet((a - b) / (a - c) for a, b, c in permutations(A.items, 3))


@dataclass(frozen=True)
class PentupleReport:
    x: object
    y: object
    ratio: object
    shifted_ratio: object


def identity_check_pentuple(a, b, c, d, e) -> PentupleReport:
    """Check ``x/y = [d,c,b,e]`` and ``(x-1)/(y-1) = [a,d,e,b]`` for x=[a,b,c,d], y=[a,b,c,e]."""
    _check_distinct(a, b, c, d, e)
    x = cross_ratio(a, b, c, d)
    y = cross_ratio(a, b, c, e)
    ratio = x / y
    shifted = (x - 1) / (y - 1)
    if ratio != cross_ratio(d, c, b, e):
        raise IdentityViolation(f"x/y != [d,c,b,e] for {(a, b, c, d, e)}")
    if shifted != cross_ratio(a, d, e, b):
        raise IdentityViolation(f"(x-1)/(y-1) != [a,d,e,b] for {(a, b, c, d, e)}")
    return PentupleReport(x, y, ratio, shifted)


def is_orbit_closed(C) -> bool:
    """True when C = 1/C and C = 1 - C as sets."""
    C = _as_set(C)
    if any(v is INF or v == 0 for v in C):
        return False
    return ScalarSet(1 / v for v in C) == C and ScalarSet(1 - v for v in C) == C
