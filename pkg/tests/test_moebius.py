import random
from fractions import Fraction as F

import pytest

from crlab.errors import DegenerateTuple, InvalidThreshold, NotCongruent
from crlab.moebius import (
    IDENTITY,
    MoebiusMap,
    congruent_pentuple_pairs,
    det,
    falling,
    fiber_partition_scan,
    from_three_points,
    g_partition,
    pentuple_energy,
    quadruple_energy,
    recover_congruence,
    rich_maps,
    richness,
)
from crlab.scalar import INF, RATIONAL, GaussianRational as G, ScalarSet
from crlab.verify import random_moebius

INV = MoebiusMap(0, 1, 1, 0)
SHIFT = MoebiusMap.translation(1)


def S(*xs):
    return ScalarSet(F(x) for x in xs)


def test_apply():
    assert IDENTITY(F(7, 2)) == F(7, 2)
    assert INV(F(0)) is INF
    assert INV(INF) == 0
    assert SHIFT(INF) is INF


def test_compose_and_invert():
    assert SHIFT @ MoebiusMap.translation(-1) == IDENTITY
    assert MoebiusMap.dilation(2).invert() == MoebiusMap(F(1, 2), 0, 0, 1)
    assert INV @ INV == IDENTITY


def test_projective_canonical_form():
    assert MoebiusMap(2, 4, 0, 2) == MoebiusMap(1, 2, 0, 1)
    with pytest.raises(DegenerateTuple):
        MoebiusMap(1, 1, 1, 1)


def test_from_three_points():
    pts = (F(0), F(1), INF)
    assert from_three_points(pts, pts) == IDENTITY
    assert from_three_points(S(0, 1, 2).items, S(1, 2, 3).items) == SHIFT
    tau = from_three_points(pts, (INF, F(1), F(0)))
    assert [tau(p) for p in pts] == [INF, F(1), F(0)]
    assert tau == INV


def test_recover_examples():
    q = list(map(F, (0, 1, 2, 3)))
    assert recover_congruence(q, list(map(F, (1, 2, 3, 4)))) == SHIFT
    assert recover_congruence(q, q) == IDENTITY
    with pytest.raises(NotCongruent):
        recover_congruence(q, list(map(F, (0, 1, 2, 4))))


def test_recover_with_infinity():
    q = [F(0), F(1), F(2), INF]
    tau = MoebiusMap(1, 2, 3, 5)
    img = [tau(x) for x in q]
    assert recover_congruence(q, img) == tau


def test_recover_random_gaussian():
    rng = random.Random(4)
    from crlab.scalar import GAUSSIAN

    for _ in range(30):
        tau = random_moebius(rng, GAUSSIAN)
        q = list(GAUSSIAN.random_set(rng, 4, 9))
        img = [tau(x) for x in q]
        if INF in img:
            continue
        assert recover_congruence(q, img) == tau


def test_det_exact():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[F(1, 2), 1], [1, 2]]) == 0


def test_richness_examples():
    A = S(0, 1, 2, 3)
    assert richness(IDENTITY, A) == 24
    assert richness(SHIFT, A) == 0
    assert richness(SHIFT, S(*range(10))) == 3024
    assert falling(9, 4) == 3024


def test_rich_maps_golden():
    h = rich_maps(S(0, 1, 2, 3))
    assert h.candidates == 84
    assert h.at_least(24) == 4
    assert h.quadruple_energy() == quadruple_energy(S(0, 1, 2, 3)) == 96


def test_richness_identity_random():
    rng = random.Random(9)
    for _ in range(5):
        A = RATIONAL.random_set(rng, rng.randint(4, 9), 10)
        assert richness(IDENTITY, A) == falling(len(A), 4)


@pytest.mark.parametrize("n", [5, 6])
def test_energy_oracle(n):
    A = S(*range(n))
    stats = pentuple_energy(A)
    assert stats.P == congruent_pentuple_pairs(A) == rich_maps(A).pentuple_energy()
    assert stats.cauchy_schwarz_holds()


def test_energy_golden_five():
    stats = pentuple_energy(S(0, 1, 2, 3, 4))
    assert (stats.total, stats.P, stats.size_G, stats.size_C, stats.Q) == (120, 240, 60, 18, 864)


@pytest.mark.parametrize("backend", ["exact", "compiled", "python"])
def test_energy_backends(backend):
    A = RATIONAL.random_set(random.Random(2), 7, 9)
    ref = pentuple_energy(A, backend="exact")
    got = pentuple_energy(A, backend=backend)
    assert got.values == ref.values
    assert got.as_counter() == ref.as_counter()
    assert got.Q == ref.Q


def test_energy_gaussian_and_infinity():
    A = ScalarSet([G(0, 0), G(1, 0), G(0, 1), G(1, 1), G(2, 3)])
    assert pentuple_energy(A).P == congruent_pentuple_pairs(A)
    B = ScalarSet([F(0), F(1), F(3), F(-2), INF])
    # P is Moebius invariant; the oracle needs finite points
    sigma = MoebiusMap(0, 1, 1, -5)
    assert pentuple_energy(B).P == congruent_pentuple_pairs(B.map(sigma)) == rich_maps(B).pentuple_energy()


def test_g_partition():
    stats = pentuple_energy(S(0, 1, 2, 3, 4))
    for t in (F(1, 2), F(1, 5), F(99, 100)):
        assert g_partition(stats, t) == fiber_partition_scan(stats, t)
    assert g_partition(stats, F(99, 100)) == (stats.size_G, 0)
    assert g_partition(stats, F(1, 100)) == (0, stats.size_G)
    with pytest.raises(InvalidThreshold):
        g_partition(stats, 1)
