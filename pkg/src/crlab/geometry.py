"""Plane constructions: symplectic-form values, directions, sine sets, incidences.

``omega(p, q) = x_p y_q - y_p x_q`` is twice the oriented area of the triangle
(O, p, q). Directions are taken mod pi: each direction is represented by the
unit vector with positive x (or (0, 1) when vertical).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

from .crossratio import _as_set, cross_ratio
from .errors import DegenerateTuple, IdentityViolation, LineThroughOrigin, OriginInSet, SetTooSmall
from .scalar import INF, ScalarSet, format_scalar, sort_key

__all__ = [
    "Point",
    "PointSet",
    "omega",
    "omega_set",
    "directions",
    "RationalDirection",
    "sine_difference_set",
    "SignedSqrt",
    "Line",
    "Hyperbola",
    "parse_curve",
    "verify_area_identity",
    "AreaReport",
    "union_of_lines",
    "UnionOfLines",
    "count_incidences",
    "IncidenceReport",
    "grid",
    "solution_count_I",
]


class Point(NamedTuple):
    x: object
    y: object

    def text(self):
        return f"{format_scalar(self.x)} {format_scalar(self.y)}"


def _point_key(p):
    return (sort_key(p.x), sort_key(p.y))


class PointSet:
    """Immutable deduplicated point set, iterated in lexicographic order."""

    __slots__ = ("_members", "_items")

    def __init__(self, points=()):
        members = frozenset(Point(*p) for p in points)
        self._members = members
        self._items = tuple(sorted(members, key=_point_key))

    @property
    def items(self):
        return self._items

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __contains__(self, p):
        return p in self._members

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        return f"PointSet(size={len(self)})"

    def to_text(self):
        return "".join(p.text() + "\n" for p in self._items)


def grid(A, B=None) -> PointSet:
    """The Cartesian product A x B (A x A by default)."""
    A = _as_set(A)
    B = A if B is None else _as_set(B)
    return PointSet(Point(a, b) for a in A for b in B)


def omega(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _points(E):
    return E.items if isinstance(E, PointSet) else PointSet(E).items


def omega_set(E) -> ScalarSet:
    """{omega(p, q) : p, q in E, p != q}."""
    pts = _points(E)
    if len(pts) < 2:
        raise SetTooSmall("need at least two points")
    return ScalarSet(omega(p, q) for p in pts for q in pts if p != q)


def directions(E) -> ScalarSet:
    """Directions from the origin mod pi, labelled by slope y/x (inf when vertical)."""
    out = set()
    for p in _points(E):
        if p.x == 0 and p.y == 0:
            raise OriginInSet("the origin has no direction")
        out.add(INF if p.x == 0 else p.y / p.x)
    return ScalarSet(out)


@dataclass(frozen=True)
class RationalDirection:
    """Direction with exact unit vector ((1-t^2)/(1+t^2), 2t/(1+t^2)).

    ``t`` is reduced into (-1, 1] so that the representative has positive x, or
    is (0, 1).
    """

    t: Fraction

    def __post_init__(self):
        t = Fraction(self.t)
        if t > 1 or t <= -1:
            t = -1 / t
        object.__setattr__(self, "t", t)

    @property
    def cos(self):
        return (1 - self.t**2) / (1 + self.t**2)

    @property
    def sin(self):
        return 2 * self.t / (1 + self.t**2)

    def unit(self) -> Point:
        return Point(self.cos, self.sin)


def _as_directions(Phi):
    out = []
    seen = set()
    for d in Phi:
        d = d if isinstance(d, RationalDirection) else RationalDirection(d)
        if d not in seen:
            seen.add(d)
            out.append(d)
    return sorted(out, key=lambda d: d.t)


def sine_difference_set(Phi, *, nonzero=False) -> ScalarSet:
    """sin(Phi - Phi) over ordered pairs, as exact cross products of unit vectors.

    Contains 0 (equal directions) unless ``nonzero`` is set.
    """
    dirs = _as_directions(Phi)
    if len(dirs) < 1 or (len(dirs) < 2 and nonzero):
        raise SetTooSmall("need at least two directions")
    vals = ScalarSet(a.sin * b.cos - a.cos * b.sin for a in dirs for b in dirs)
    if nonzero:
        return ScalarSet(v for v in vals if v != 0)
    return vals


class SignedSqrt:
    """A real number whose square is rational, stored as (sign, square).

    Closed under multiplication and division; equality is exact.
    """

    __slots__ = ("sign", "square")

    def __init__(self, sign, square):
        square = Fraction(square)
        sign = 0 if square == 0 else (1 if sign > 0 else -1)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "square", square)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @classmethod
    def of(cls, r):
        r = Fraction(r)
        return cls((r > 0) - (r < 0), r * r)

    @classmethod
    def sine(cls, p, q):
        """Sine of the signed angle from direction p to direction q."""
        cross = omega(p, q)
        norms = (p.x * p.x + p.y * p.y) * (q.x * q.x + q.y * q.y)
        return cls((cross > 0) - (cross < 0), cross * cross / norms)

    def __mul__(self, other):
        return SignedSqrt(self.sign * other.sign, self.square * other.square)

    def __truediv__(self, other):
        if other.sign == 0:
            raise ZeroDivisionError("division by zero sine")
        return SignedSqrt(self.sign * other.sign, self.square / other.square)

    def __neg__(self):
        return SignedSqrt(-self.sign, self.square)

    def __eq__(self, other):
        if not isinstance(other, SignedSqrt):
            return NotImplemented
        return self.sign == other.sign and self.square == other.square

    def __hash__(self):
        return hash((self.sign, self.square))

    def __repr__(self):
        s = "-" if self.sign < 0 else ""
        return f"{s}sqrt({self.square})"


# curves ------------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """a x + b y = c, scaled so the first nonzero coefficient is 1."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        a, b, c = (Fraction(v) if isinstance(v, int) else v for v in (self.a, self.b, self.c))
        if a == 0 and b == 0:
            raise DegenerateTuple("a line needs (a, b) != (0, 0)")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    def contains(self, p) -> bool:
        return self.a * p[0] + self.b * p[1] == self.c

    def through_origin(self) -> bool:
        return self.c == 0

    def point_at(self, s) -> Point:
        """Point with x = s, or y = s for vertical lines."""
        if self.b != 0:
            return Point(s, (self.c - self.a * s) / self.b)
        return Point(self.c / self.a, s)

    def text(self):
        return "L " + " ".join(format_scalar(v) for v in (self.a, self.b, self.c))


@dataclass(frozen=True)
class Hyperbola:
    """x y - alpha x + delta y - beta = 0."""

    alpha: object
    delta: object
    beta: object

    def __post_init__(self):
        for name in ("alpha", "delta", "beta"):
            v = getattr(self, name)
            if isinstance(v, int):
                object.__setattr__(self, name, Fraction(v))

    def contains(self, p) -> bool:
        x, y = p[0], p[1]
        return x * y - self.alpha * x + self.delta * y - self.beta == 0

    def text(self):
        return "H " + " ".join(format_scalar(v) for v in (self.alpha, self.delta, self.beta))


def parse_curve(text, field, where=None):
    from .errors import ConfigError

    parts = text.split()
    if len(parts) != 4 or parts[0] not in ("L", "H"):
        raise ConfigError(f"expected 'L a b c' or 'H alpha delta beta', got {text!r}", where)
    vals = [field.parse(v, allow_infinity=False, where=where) for v in parts[1:]]
    try:
        return Line(*vals) if parts[0] == "L" else Hyperbola(*vals)
    except DegenerateTuple as exc:
        raise ConfigError(str(exc), where) from exc


# lines, areas and unions of lines ------------------------------------------------


@dataclass
class AreaReport:
    quadruples: int
    sine_set_size: int
    cross_ratios: ScalarSet


def verify_area_identity(line: Line, A) -> AreaReport:
    """Check, for every ordered quadruple of points on ``line``, that the
    cross-ratio of their parameters equals sin(Oab) sin(Ocd) / (sin(Oac) sin(Obd)),
    and that each of the four sines lies in sin(Phi - Phi) for the directions
    Phi of the points, witnessing C[A] in (S S)/(S S).
    """
    if line.through_origin():
        raise LineThroughOrigin(f"{line.text()} passes through the origin")
    A = _as_set(A)
    if len(A) < 4:
        raise SetTooSmall("need at least four points on the line")
    pts = {s: line.point_at(s) for s in A}
    sines = {SignedSqrt.sine(p, q) for p in pts.values() for q in pts.values()}
    count = 0
    crs = set()
    for a, b, c, d in permutations(A.items, 4):
        sab = SignedSqrt.sine(pts[a], pts[b])
        scd = SignedSqrt.sine(pts[c], pts[d])
        sac = SignedSqrt.sine(pts[a], pts[c])
        sbd = SignedSqrt.sine(pts[b], pts[d])
        cr = cross_ratio(a, b, c, d)
        if (sab * scd) / (sac * sbd) != SignedSqrt.of(cr):
            raise IdentityViolation(f"sine quotient differs from [{a},{b},{c},{d}] = {cr}")
        if not {sab, scd, sac, sbd} <= sines:
            raise IdentityViolation("sine outside sin(Phi - Phi)")
        crs.add(cr)
        count += 1
    return AreaReport(count, len(sines), ScalarSet(crs))


@dataclass
class UnionOfLines:
    points: PointSet
    omega: ScalarSet
    products: ScalarSet


def union_of_lines(Phi, T) -> UnionOfLines:
    """E = {t u(phi)}: |T| points on each of |Phi| lines through the origin.

    Checks omega[E] + {0} = (T T) sin(Phi - Phi); the 0 comes from equal
    directions, which sin(Phi - Phi) always contains.
    """
    dirs = _as_directions(Phi)
    T = _as_set(T)
    if not dirs:
        raise ValueError("Phi must be nonempty")
    if not len(T) or any(t is INF or t <= 0 for t in T):
        raise ValueError("T must be a nonempty set of positive scalars")
    E = PointSet(Point(t * d.cos, t * d.sin) for t in T for d in dirs)
    if len(E) != len(T) * len(dirs):
        raise IdentityViolation("union-of-lines points collided")
    om = ScalarSet(omega(p, q) for p in E for q in E)  # p = q adds the 0
    sinD = sine_difference_set(dirs)
    TT = {s * t for s in T for t in T}
    rhs = ScalarSet(u * v for u in TT for v in sinD)
    if om != rhs:
        raise IdentityViolation("omega[E] != TT * sin(Phi - Phi)")
    return UnionOfLines(E, om, rhs)


# incidences ----------------------------------------------------------------


@dataclass
class IncidenceReport:
    incidences: int
    curves: tuple
    per_curve: tuple

    def histogram(self):
        """(k, number of curves with at least k points) for k = 1..max."""
        top = max(self.per_curve, default=0)
        counts = Counter(self.per_curve)
        rows = []
        running = 0
        for k in range(top, 0, -1):
            running += counts.get(k, 0)
            rows.append((k, running))
        return rows[::-1]


def _dedupe_curves(curves):
    seen = {}
    for c in curves:
        seen.setdefault(c, None)
    return tuple(sorted(seen, key=lambda c: c.text()))


def _count_fast(pts, curve, by_x, xs):
    if isinstance(curve, Line):
        if curve.b == 0:
            return len(by_x.get(curve.c / curve.a, ()))
        return sum(1 for x in xs if (curve.c - curve.a * x) / curve.b in by_x[x])
    # y (x + delta) = alpha x + beta
    total = 0
    for x in xs:
        den = x + curve.delta
        if den == 0:
            if curve.alpha * x + curve.beta == 0:
                total += len(by_x[x])
        elif (curve.alpha * x + curve.beta) / den in by_x[x]:
            total += 1
    return total


def count_incidences(P, curves, *, method="fast") -> IncidenceReport:
    """Exact incidences between points and lines/hyperbolae.

    ``fast`` solves each curve for y over the distinct x-coordinates and looks
    the point up in a hash index; ``brute`` tests every (point, curve) pair.
    """
    pts = _points(P)
    cs = _dedupe_curves(curves)
    if method == "brute":
        per = tuple(sum(1 for p in pts if c.contains(p)) for c in cs)
    elif method == "fast":
        by_x = defaultdict(set)
        for p in pts:
            by_x[p.x].add(p.y)
        xs = list(by_x)
        per = tuple(_count_fast(pts, c, by_x, xs) for c in cs)
    else:
        raise ValueError(f"unknown method {method!r}")
    return IncidenceReport(sum(per), cs, per)


def solution_count_I(C, *, method="hash") -> int:
    """|{(r, r', y, y') in C^4 : r' y' - r (y - 1) = 1}|."""
    C = [c for c in _as_set(C) if c is not INF]
    if not C:
        raise ValueError("C must be nonempty")
    if method == "hash":
        products = Counter(r2 * y2 for r2 in C for y2 in C)
        return sum(products.get(1 + r * (y - 1), 0) for r in C for y in C)
    if method == "brute":
        return sum(
            1
            for r in C for r2 in C for y in C for y2 in C
            if r2 * y2 - r * (y - 1) == 1
        )
    raise ValueError(f"unknown method {method!r}")
