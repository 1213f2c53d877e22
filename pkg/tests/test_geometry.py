import random
from fractions import Fraction as F

import pytest

from crlab.errors import ConfigError, LineThroughOrigin, OriginInSet
from crlab.geometry import (
    Hyperbola,
    Line,
    Point,
    PointSet,
    RationalDirection,
    SignedSqrt,
    count_incidences,
    directions,
    grid,
    omega_set,
    parse_curve,
    sine_difference_set,
    solution_count_I,
    union_of_lines,
    verify_area_identity,
)
from crlab.scalar import INF, RATIONAL, ScalarSet


def P(*pairs):
    return PointSet(Point(F(x), F(y)) for x, y in pairs)


def test_omega_examples():
    assert set(omega_set(P((1, 0), (0, 1)))) >= {F(1), F(-1)}
    assert set(omega_set(P((1, 0), (0, 1), (1, 1)))) - {0} == {F(1), F(-1)}
    assert set(omega_set(P((1, 0), (2, 0)))) == {F(0)}


def test_directions():
    assert len(directions(P((1, 0), (2, 0), (0, 1)))) == 2
    assert len(directions(P((1, 0), (-1, 0)))) == 1
    D = directions(grid(ScalarSet(map(F, (1, 2, 3)))))
    assert set(D) == {F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2), F(2), F(3)}
    assert INF in directions(P((0, 1)))
    with pytest.raises(OriginInSet):
        directions(P((0, 0), (1, 1)))


def test_rational_direction():
    d = RationalDirection(F(1, 2))
    assert d.unit() == Point(F(3, 5), F(4, 5))
    assert d.cos**2 + d.sin**2 == 1
    assert RationalDirection(2) == RationalDirection(F(-1, 2))


def test_sine_set():
    S = sine_difference_set([F(0), F(1, 2)])
    assert F(4, 5) in S and F(-4, 5) in S
    assert set(sine_difference_set([F(1, 3)])) == {0}


def test_signed_sqrt():
    s = SignedSqrt.sine(Point(F(1), F(0)), Point(F(1), F(1)))
    assert s * s == SignedSqrt.of(F(1, 2))
    assert s / s == SignedSqrt.of(1)


def test_area_identity():
    line = Line(0, 1, 1)  # y = 1
    r = verify_area_identity(line, ScalarSet(map(F, (0, 1, 2, 3))))
    assert r.quadruples == 24
    assert len(r.cross_ratios) == 6
    r = verify_area_identity(line, ScalarSet(map(F, (0, 1, 2, 4))))
    assert F(1, 3) in r.cross_ratios
    with pytest.raises(LineThroughOrigin):
        verify_area_identity(Line(1, -1, 0), ScalarSet(map(F, range(4))))


def test_area_identity_random_lines():
    rng = random.Random(8)
    for _ in range(5):
        a, b, c = (F(rng.randint(1, 5)) for _ in range(3))
        verify_area_identity(Line(a, b, c), RATIONAL.random_set(rng, 5, 7))


def test_union_of_lines():
    u = union_of_lines([F(0), F(1, 2), F(1, 3)], [F(1), F(2), F(4)])
    assert len(u.points) == 9
    assert u.omega == u.products
    single = union_of_lines([F(1, 5)], [F(1), F(3)])
    assert set(single.omega) == {0}


def test_incidence_examples():
    grid2 = P((0, 0), (0, 1), (1, 0), (1, 1))
    assert count_incidences(grid2, [Line(1, -1, 0)]).incidences == 2
    g3 = grid(ScalarSet(map(F, range(3))))
    assert count_incidences(g3, [Line(1, -1, 0), Line(-1, 1, 1)]).incidences == 5
    h = grid(ScalarSet(map(F, (1, 2, 3))))
    assert count_incidences(h, [Hyperbola(0, 0, 2)]).incidences == 2


def test_incidence_fast_vs_brute():
    rng = random.Random(1)
    for _ in range(10):
        pts = PointSet(Point(F(rng.randint(-5, 5)), F(rng.randint(-5, 5))) for _ in range(60))
        curves = []
        for _ in range(30):
            if rng.random() < 0.5:
                curves.append(Line(rng.randint(-3, 3) or 1, rng.randint(-3, 3), rng.randint(-3, 3)))
            else:
                curves.append(Hyperbola(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3) or 1))
        fast = count_incidences(pts, curves)
        assert fast == count_incidences(pts, curves, method="brute")
        hist = fast.histogram()
        if hist:
            assert hist[0][1] == sum(1 for k in fast.per_curve if k >= 1)


def test_parse_curve():
    assert parse_curve("L 1 -1 0", RATIONAL) == Line(1, -1, 0)
    assert parse_curve("H 0 0 2", RATIONAL) == Hyperbola(0, 0, 2)
    with pytest.raises(ConfigError):
        parse_curve("Q 1 2", RATIONAL, where="c:1")


def test_solution_count():
    assert solution_count_I(ScalarSet([F(1)])) == 1
    C = ScalarSet(map(F, (-3, F(-1, 3), F(1, 4), F(3, 4), F(4, 3), 4)))
    assert solution_count_I(C) == solution_count_I(C, method="brute")
