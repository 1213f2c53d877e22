"""Moebius maps over Q or Q(i): congruence of tuples, richness and the energies Q, P.

Maps are stored projectively: the first nonzero of (alpha, beta, gamma, delta)
is scaled to 1, so equal maps have equal coefficient tuples. This avoids the
square roots a unit-determinant normalisation would need.
"""

from __future__ import annotations

import operator
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm

import numpy as np

from . import kernels
from .crossratio import _as_set, _require, cross_ratio, cross_ratio_histogram
from .errors import DegenerateTuple, IdentityViolation, InvalidThreshold, NotCongruent
from .parallel import fan_out
from .scalar import INF, format_scalar, sort_key

__all__ = [
    "MoebiusMap",
    "IDENTITY",
    "from_three_points",
    "recover_congruence",
    "richness",
    "falling",
    "rich_maps",
    "RichnessHistogram",
    "quadruple_energy",
    "pentuple_energy",
    "GStatistics",
    "g_partition",
    "fiber_partition_scan",
    "congruent_pentuple_pairs",
    "det",
    "nullspace",
]


def falling(m: int, k: int) -> int:
    """m (m-1) ... (m-k+1); zero when m < k."""
    out = 1
    for i in range(k):
        out *= m - i
    return max(out, 0) if m >= 0 else 0


class MoebiusMap:
    """z -> (alpha z + beta) / (gamma z + delta), projectively canonical."""

    __slots__ = ("coeffs",)

    def __init__(self, alpha, beta, gamma, delta):
        if alpha * delta - beta * gamma == 0:
            raise DegenerateTuple("singular Moebius matrix")
        coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in (alpha, beta, gamma, delta))
        lead = next(c for c in coeffs if c != 0)
        object.__setattr__(self, "coeffs", tuple(c / lead for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusMap is immutable")

    def __reduce__(self):
        return (MoebiusMap, self.coeffs)

    alpha = property(lambda self: self.coeffs[0])
    beta = property(lambda self: self.coeffs[1])
    gamma = property(lambda self: self.coeffs[2])
    delta = property(lambda self: self.coeffs[3])

    @classmethod
    def translation(cls, s):
        return cls(1, s, 0, 1)

    @classmethod
    def dilation(cls, s):
        return cls(s, 0, 0, 1)

    @classmethod
    def inversion(cls):
        return cls(0, 1, 1, 0)

    def __call__(self, p):
        return self.apply(p)

    def apply(self, p):
        a, b, c, d = self.coeffs
        if p is INF:
            return INF if c == 0 else a / c
        den = c * p + d
        if den == 0:
            return INF
        return (a * p + b) / den

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self`` after ``other``."""
        a, b, c, d = self.coeffs
        e, f, g, h = other.coeffs
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __matmul__ = compose

    def invert(self) -> "MoebiusMap":
        a, b, c, d = self.coeffs
        return MoebiusMap(d, -b, -c, a)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "MoebiusMap(" + ", ".join(format_scalar(c) for c in self.coeffs) + ")"

    def text(self) -> str:
        return " ".join(format_scalar(c) for c in self.coeffs)


IDENTITY = MoebiusMap(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def _to_zero_one_inf(p1, p2, p3) -> MoebiusMap:
    if p1 is INF:
        return MoebiusMap(0, p2 - p3, 1, -p3)
    if p2 is INF:
        return MoebiusMap(1, -p1, 1, -p3)
    if p3 is INF:
        return MoebiusMap(1, -p1, 0, p2 - p1)
    return MoebiusMap(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))


def from_three_points(src, dst) -> MoebiusMap:
    """The unique map sending src[i] to dst[i] for i = 0, 1, 2."""
    if len(set(src)) != 3 or len(set(dst)) != 3:
        raise DegenerateTuple(f"triples must be pairwise distinct: {src} -> {dst}")
    return _to_zero_one_inf(*dst).invert() @ _to_zero_one_inf(*src)


# exact linear algebra over any field ---------------------------------------


def det(matrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Integer matrices stay in the integers; field entries stay in their field.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    exact_div = operator.floordiv if all(type(x) is int for row in m for x in row) else operator.truediv
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return m[0][0] - m[0][0]
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = exact_div(row_i[j] * pk - mik * row_k[j], prev)
        prev = pk
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def nullspace(matrix):
    """Basis of {v : matrix v = 0}, via reduced row echelon form."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in matrix]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    zero = m[0][0] - m[0][0]
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = [zero] * cols
        v[free] = zero + 1
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


def _congruence_matrix(q, q2):
    one = q[0] - q[0] + 1
    return [
        [one] * 4,
        list(q),
        list(q2),
        [x * y for x, y in zip(q, q2)],
    ]


def _free_point(points):
    s = 0
    while s in points:
        s += 1
    return Fraction(s)


def recover_congruence(q, q2) -> MoebiusMap:
    """Map taking quadruple ``q`` onto ``q2`` entrywise, from the null space of the
    4x4 matrix with rows (1,1,1,1), q, q2, q*q2.

    Raises NotCongruent when that determinant is nonzero (cross-ratios differ).
    """
    q = tuple(Fraction(x) if isinstance(x, int) else x for x in q)
    q2 = tuple(Fraction(x) if isinstance(x, int) else x for x in q2)
    if len(q) != 4 or len(q2) != 4 or len(set(q)) != 4 or len(set(q2)) != 4:
        raise DegenerateTuple(f"need two quadruples of distinct points: {q}, {q2}")
    if INF in q or INF in q2:
        s = _free_point(set(q) | set(q2))
        sigma = MoebiusMap(0, 1, 1, -s)  # z -> 1/(z - s); s -> inf, inf -> 0
        inner = recover_congruence([sigma(x) for x in q], [sigma(x) for x in q2])
        return sigma.invert() @ inner @ sigma

    m = _congruence_matrix(q, q2)
    if det(m) != 0:
        if cross_ratio(*q) == cross_ratio(*q2):
            raise IdentityViolation(f"equal cross-ratios but nonzero determinant: {q}, {q2}")
        raise NotCongruent(f"{q} and {q2} have different cross-ratios")
    # rows dependent with coefficients (-beta, -alpha, delta, gamma)
    transpose = [list(col) for col in zip(*m)]
    basis = nullspace(transpose)
    if len(basis) != 1:
        raise IdentityViolation(f"expected a one-dimensional null space, got {len(basis)}")
    v = basis[0]
    alpha, beta, gamma, delta = -v[1], -v[0], v[3], v[2]
    tau = MoebiusMap(alpha, beta, gamma, delta)
    for x, y in zip(q, q2):
        if y * (gamma * x + delta) - (alpha * x + beta) != 0 or tau(x) != y:
            raise IdentityViolation(f"recovered map misses ({x}, {y})")
    if cross_ratio(*q) != cross_ratio(*q2):
        raise IdentityViolation(f"zero determinant but different cross-ratios: {q}, {q2}")
    return tau


# richness ------------------------------------------------------------------


def _domain_size(tau, A) -> int:
    return sum(1 for a in A if tau(a) in A)


def richness(tau: MoebiusMap, A) -> int:
    """Number of ordered quadruples of distinct points of A that tau maps into A."""
    return falling(_domain_size(tau, _as_set(A)), 4)


def _rich_chunk(items, lo, hi):
    found = {}
    members = frozenset(items)
    n = len(items)
    targets = list(permutations(items, 3))
    for i in range(lo, hi):
        for j, k in combinations(range(i + 1, n), 2):
            src = (items[i], items[j], items[k])
            for dst in targets:
                tau = from_three_points(src, dst)
                if tau not in found:
                    found[tau] = sum(1 for a in items if tau(a) in members)
    return found


@dataclass
class RichnessHistogram:
    """Maps moving at least four points of A into A, with their domain sizes m.

    ``richness`` of a map is m(m-1)(m-2)(m-3) (ordered quadruples);
    ``candidates`` counts every distinct map found, including those with m = 3.
    """

    domain: dict
    candidates: int
    set_size: int

    @property
    def richness(self) -> dict:
        return {tau: falling(m, 4) for tau, m in self.domain.items()}

    def levels(self) -> list:
        return sorted({falling(m, 4) for m in self.domain.values()})

    def at_least(self, k) -> int:
        return sum(1 for m in self.domain.values() if falling(m, 4) >= k)

    def maps_at_least(self, k) -> list:
        rich = [(tau, m) for tau, m in self.domain.items() if falling(m, 4) >= k]
        return [tau for tau, _ in sorted(rich, key=lambda tm: (-tm[1], tm[0].text()))]

    def rows(self):
        """(k, |{tau : richness >= k}|) for every attained richness level k."""
        return [(k, self.at_least(k)) for k in self.levels()]

    def quadruple_energy(self) -> int:
        """Q recovered as the sum of richness over maps."""
        return sum(falling(m, 4) for m in self.domain.values())

    def pentuple_energy(self) -> int:
        """P recovered as the sum of m(m-1)...(m-4) over maps."""
        return sum(falling(m, 5) for m in self.domain.values())

    def dyadic_table(self):
        """Rows (j, 2^j, |M_{2^j}|, |M_{2^j}| * (2^j)^5) for 2^j up to the top level."""
        top = max(self.levels(), default=0)
        rows = []
        j = 0
        while (1 << j) <= max(top, 1):
            k = 1 << j
            count = self.at_least(k)
            rows.append((j, k, count, count * k**5))
            j += 1
        return rows


def rich_maps(A, k=1, *, workers=1) -> RichnessHistogram:
    """Every map sending three points of A into A, with its domain size.

    The histogram keeps maps with richness >= k (k >= 1 drops the m = 3 maps).
    """
    A = _as_set(A)
    _require(A, 4)
    found = {}
    for part in fan_out(_rich_chunk, len(A), workers, A.items):
        found.update(part)
    kept = {tau: m for tau, m in found.items() if falling(m, 4) >= max(k, 1)}
    return RichnessHistogram(domain=kept, candidates=len(found), set_size=len(A))


# energies --------------------------------------------------------------------


def quadruple_energy(A, *, workers=1, backend=None) -> int:
    """Q: pairs of congruent ordered quadruples = sum of squared cross-ratio multiplicities."""
    hist = cross_ratio_histogram(A, workers=workers, backend=backend)
    return sum(v * v for v in hist.values())


@dataclass
class GStatistics:
    """The pair set G = {(x, y)} with pentuple counts p(x, y).

    ``values`` lists C[A] in canonical order; ``gx``, ``gy`` index into it and
    ``p`` holds the counts, all sorted by (gx, gy).
    """

    n: int
    values: tuple
    gx: np.ndarray
    gy: np.ndarray
    p: np.ndarray
    Q: int
    extra: dict = field(default_factory=dict)

    @property
    def size_C(self) -> int:
        return len(self.values)

    @property
    def size_G(self) -> int:
        return int(len(self.p))

    @property
    def total(self) -> int:
        return int(sum(int(v) for v in self.p.tolist()))

    @property
    def P(self) -> int:
        return sum(int(v) * int(v) for v in self.p.tolist())

    def pairs(self):
        vals = self.values
        for x, y, c in zip(self.gx.tolist(), self.gy.tolist(), self.p.tolist()):
            yield vals[x], vals[y], c

    def as_counter(self) -> Counter:
        return Counter({(x, y): c for x, y, c in self.pairs()})

    def cauchy_schwarz_holds(self) -> bool:
        """(sum p)^2 <= |G| * sum p^2, exactly."""
        return self.total**2 <= self.size_G * self.P


def _pentuple_chunk(items, lo, hi):
    counts = Counter()
    n = len(items)
    for i in range(lo, hi):
        a = items[i]
        for j in range(n):
            if j == i:
                continue
            b = items[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                c = items[k]
                row = [cross_ratio(a, b, c, items[l]) for l in range(n) if l not in (i, j, k)]
                for d, x in enumerate(row):
                    for e, y in enumerate(row):
                        if d != e:
                            counts[(x, y)] += 1
    return counts


def _canonical_ids(values):
    """Permutation taking kernel value ids to canonical (sort_key) order."""
    order = sorted(range(len(values)), key=lambda i: sort_key(values[i]))
    remap = np.empty(len(values), dtype=np.int64)
    remap[np.array(order, dtype=np.int64)] = np.arange(len(values), dtype=np.int64)
    return tuple(values[i] for i in order), remap


def pentuple_energy(A, *, workers=1, backend=None) -> GStatistics:
    """G-statistics: p(x, y) over ordered pentuples with x=[a,b,c,d], y=[a,b,c,e]."""
    A = _as_set(A)
    _require(A, 5)
    n = len(A)
    xs = None if backend == "exact" else kernels.integer_image(A)
    if xs is None and backend in ("compiled", "python"):
        raise ValueError(f"set is not eligible for the {backend} kernel backend")
    if xs is not None:
        kb = backend if backend in ("compiled", "python") else None
        nums, dens = kernels.quad_values(xs, workers, kb)
        un, ud, inverse, counts = kernels.unique_fractions(nums, dens)
        values, remap = _canonical_ids(kernels.to_fractions(un, ud))
        ids = remap[inverse]
        m = len(values)
        keys = kernels.pentuple_keys(ids, n, m, workers, kb)
        ukeys, p = np.unique(keys, return_counts=True)
        Q = sum(int(c) * int(c) for c in counts.tolist())
        return GStatistics(n, values, ukeys // m, ukeys % m, p.astype(np.int64), Q)

    counts = Counter()
    for part in fan_out(_pentuple_chunk, n, workers, A.items):
        counts.update(part)
    hist = cross_ratio_histogram(A, workers=workers, backend="exact")
    values = tuple(sorted(hist, key=sort_key))
    index = {v: i for i, v in enumerate(values)}
    rows = sorted((index[x], index[y], c) for (x, y), c in counts.items())
    arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
    Q = sum(v * v for v in hist.values())
    return GStatistics(n, values, arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), Q)


def _check_threshold(t):
    try:
        t = Fraction(t)
    except (TypeError, ValueError) as exc:
        raise InvalidThreshold(f"threshold must be rational, got {t!r}") from exc
    if not 0 < t < 1:
        raise InvalidThreshold(f"threshold t must lie in (0, 1), got {t}")
    return t


def g_partition(stats: GStatistics, t) -> tuple:
    """(|G'|, |G''|): G' holds pairs whose x-fiber has at most t|C[A]| distinct y."""
    t = _check_threshold(t)
    cap = t * stats.size_C
    fiber = np.bincount(stats.gx, minlength=stats.size_C)
    small = fiber <= int(cap)  # fiber sizes are integers, so <= cap iff <= floor(cap)
    g1 = int(fiber[small].sum())
    g2 = stats.size_G - g1
    if g1 > cap * stats.size_C:
        raise IdentityViolation(f"|G'| = {g1} exceeds t|C|^2 = {cap * stats.size_C}")
    return g1, g2


def fiber_partition_scan(stats: GStatistics, t) -> tuple:
    """Independent dictionary-based recount of g_partition."""
    t = _check_threshold(t)
    fibers = {}
    for x, y, _ in stats.pairs():
        fibers.setdefault(x, set()).add(y)
    g1 = g2 = 0
    for ys in fibers.values():
        if len(ys) <= t * stats.size_C:
            g1 += len(ys)
        else:
            g2 += len(ys)
    return g1, g2


# brute-force oracle ----------------------------------------------------------


def congruent_pentuple_pairs(A) -> int:
    """P by brute force over all pairs of ordered pentuples.

    Congruence of quadruple pairs is decided by the vanishing 4x4 determinant;
    each congruent pentuple pair is then confirmed with recover_congruence.
    """
    A = _as_set(A)
    _require(A, 5)
    if A.has_infinity():
        raise ValueError("oracle expects finite scalars")
    items = list(A.items)
    if all(isinstance(v, Fraction) for v in items):
        # congruence classes are invariant under the dilation by lcm(denominators)
        L = lcm(*(v.denominator for v in items))
        items = [int(v * L) for v in items]
    quads = list(permutations(range(len(items)), 4))
    qidx = {q: i for i, q in enumerate(quads)}
    vals = [[items[i] for i in q] for q in quads]
    cong = [
        [det(_congruence_matrix(u, w)) == 0 for w in vals]
        for u in vals
    ]
    pents = list(permutations(range(len(items)), 5))
    keys = [(qidx[p[:4]], qidx[p[:3] + (p[4],)]) for p in pents]
    total = 0
    for s, (q1, r1) in enumerate(keys):
        row_q, row_r = cong[q1], cong[r1]
        for t, (q2, r2) in enumerate(keys):
            if row_q[q2] and row_r[r2]:
                total += 1
                src = [items[i] for i in pents[s]]
                dst = [items[i] for i in pents[t]]
                tau = recover_congruence(src[:4], dst[:4])
                if tau(src[4]) != dst[4]:
                    raise IdentityViolation(f"pentuples {src} and {dst} not congruent")
    return total
