import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from crlab.crossratio import (
    cross_ratio,
    cross_ratio_histogram,
    cross_ratio_set,
    identity_check_pentuple,
    is_orbit_closed,
    orbit,
    ordered_cross_ratio_set,
    pinned_cross_ratio_set,
)
from crlab.moebius import quadruple_energy
from crlab.errors import DegenerateTuple, SetTooSmall
from crlab.scalar import INF, RATIONAL, GaussianRational as G, ScalarSet

SIX = {F(1, 4), F(4), F(3, 4), F(4, 3), F(-3), F(-1, 3)}


def S(*xs):
    return ScalarSet(F(x) if x is not INF else INF for x in xs)


def test_basic_values():
    assert cross_ratio(F(0), F(1), F(2), F(3)) == F(1, 4)
    assert cross_ratio(F(0), F(1), F(2), INF) == F(1, 2)
    assert cross_ratio(F(5), F(6), F(7), F(8)) == F(1, 4)


def test_degenerate():
    with pytest.raises(DegenerateTuple):
        cross_ratio(F(0), F(1), F(1), F(3))


@pytest.mark.parametrize("lam, expected", [(F(1, 4), SIX), (F(-1), {F(-1), F(2), F(1, 2)}), (F(2), {F(-1), F(2), F(1, 2)})])
def test_orbit(lam, expected):
    assert set(orbit(lam)) == expected


def test_orbit_rejects_degenerate():
    with pytest.raises(DegenerateTuple):
        orbit(F(1))


def test_c_of_0123():
    C = cross_ratio_set(S(0, 1, 2, 3))
    assert set(C) == SIX


def test_c_with_infinity_is_harmonic():
    # {0, 1, 2, inf} is harmonic, so its one orbit has three values.
    C = cross_ratio_set(S(0, 1, 2, INF))
    assert set(C) == {F(-1), F(2), F(1, 2)}
    assert C == ordered_cross_ratio_set(S(0, 1, 2, INF))


def test_four_point_sizes():
    rng = random.Random(3)
    for _ in range(50):
        A = RATIONAL.random_set(rng, 4, 6)
        assert len(cross_ratio_set(A)) in (3, 6)


def test_pinned():
    assert set(pinned_cross_ratio_set(S(0, 1, 2))) == {F(1, 2), F(2), F(-1)}
    assert set(pinned_cross_ratio_set(S(0, 1, 3))) == {F(1, 3), F(3), F(-1, 2), F(-2), F(2, 3), F(3, 2)}
    with pytest.raises(SetTooSmall):
        pinned_cross_ratio_set(S(0, 1))


def test_too_small():
    with pytest.raises(SetTooSmall):
        cross_ratio_set(S(0, 1, 2))


def test_histogram_counts_ordered_quadruples():
    A = S(0, 1, 2, 3, 5)
    h = cross_ratio_histogram(A)
    assert sum(h.values()) == 5 * 4 * 3 * 2
    assert set(h) == set(cross_ratio_set(A))
    assert sum(v * v for v in h.values()) == quadruple_energy(A)


def test_pentuple_identities():
    identity_check_pentuple(*map(F, range(5)))
    identity_check_pentuple(F(0), F(1), F(2), F(3), INF)


def test_pentuple_moebius_invariant():
    pts = list(map(F, (0, 1, 3, 7, -2)))
    r1 = identity_check_pentuple(*pts)
    r2 = identity_check_pentuple(*(2 * p + 1 for p in pts))
    assert (r1.x, r1.y) == (r2.x, r2.y)


def test_orbit_closed():
    rng = random.Random(5)
    for size in (4, 6, 9):
        C = cross_ratio_set(RATIONAL.random_set(rng, size, 10))
        assert is_orbit_closed(C)
        assert C == ScalarSet(1 / c for c in C) == ScalarSet(1 - c for c in C)


def test_gaussian_mode():
    A = ScalarSet([G(0, 0), G(1, 0), G(0, 1), G(1, 1), G(2, 1)])
    assert cross_ratio_set(A) == ordered_cross_ratio_set(A)


@pytest.mark.parametrize("backend", ["exact", "compiled", "python"])
def test_backends_agree(backend):
    A = RATIONAL.random_set(random.Random(11), 9, 7)
    assert cross_ratio_set(A, backend=backend) == ordered_cross_ratio_set(A)
    assert pinned_cross_ratio_set(A, backend=backend) == pinned_cross_ratio_set(A, backend="exact")
    assert cross_ratio_histogram(A, backend=backend) == cross_ratio_histogram(A, backend="exact")


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(-30, 30), min_size=4, max_size=7))
def test_orbit_union_matches_enumeration(xs):
    A = ScalarSet(F(x) for x in xs)
    assert cross_ratio_set(A) == ordered_cross_ratio_set(A)
