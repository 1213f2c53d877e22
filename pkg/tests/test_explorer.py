from fractions import Fraction as F

import numpy as np
import pytest

from crlab.errors import BudgetExceeded, ConfigError
from crlab.explorer import FamilySpec, build_family, compute_statistic, fit_exponent, search_extremal, sweep
from crlab.geometry import PointSet


def test_fit_recovers_synthetic_slope():
    ns = [4, 6, 9, 13, 20]
    fit = fit_exponent([(n, 7 * n**3) for n in ns])
    assert abs(fit.slope - 3) < 1e-9
    assert abs(fit.intercept - np.log(7)) < 1e-9
    assert fit.residual < 1e-9


def test_fit_needs_samples():
    with pytest.raises(ValueError):
        fit_exponent([(4, 6), (5, 18)])


def test_ap_sumset_slope():
    fit = sweep(FamilySpec("ap", list(range(4, 12)), start=F(0)), "A+A")
    assert all(v == 2 * n - 1 for n, v in fit.samples)


@pytest.mark.parametrize("kind", ["ap", "gp", "random"])
def test_c_at_four(kind):
    assert compute_statistic("C", build_family(FamilySpec(kind, [4]), 4)) in (3, 6)


def test_families():
    assert list(build_family(FamilySpec("gp", [4], ratio=3), 4)) == [1, 3, 9, 27]
    assert build_family(FamilySpec("random", [6], seed=2), 6) == build_family(FamilySpec("random", [6], seed=2), 6)
    E = build_family(FamilySpec("union-of-lines", [3]), 3)
    assert isinstance(E, PointSet) and len(E) == 6
    assert compute_statistic("omega", E) > 0
    with pytest.raises(ConfigError):
        FamilySpec("gp", [4], ratio=1)
    with pytest.raises(ConfigError):
        compute_statistic("C", E)


def test_statistics_small():
    A = build_family(FamilySpec("ap", [5], start=F(0)), 5)
    assert compute_statistic("Q", A) > 0
    assert compute_statistic("P", A) == 240
    assert compute_statistic("SS", A) > 0
    assert compute_statistic("omega", A) > 0


def test_budget():
    with pytest.raises(BudgetExceeded):
        sweep(FamilySpec("gp", [50, 60]), "P", budget=1000)
    with pytest.raises(BudgetExceeded):
        search_extremal("C", 20, iterations=10**6, budget=10**6)


def test_search_finds_harmonic_quadruple():
    r = search_extremal("C", 4, seed=0)
    assert r.best_value == 3
    assert r.trace == sorted(r.trace, reverse=True)
    assert len(r.trace) == 1000


def test_search_replay_identical():
    a = search_extremal("C", 5, iterations=150, seed=9, restarts=2)
    b = search_extremal("C", 5, iterations=150, seed=9, restarts=2, workers=2)
    assert (a.trace, a.best, a.restart) == (b.trace, b.best, b.restart)


def test_search_sumset_toward_ap():
    r = search_extremal("A+A", 5, iterations=2000, seed=1, height=4)
    assert 2 * 5 - 1 <= r.best_value <= 11
