import pickle
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from crlab.errors import ConfigError
from crlab.scalar import GAUSSIAN, INF, RATIONAL, GaussianRational as G, ScalarSet, format_scalar, proj_invert


def test_rational_arithmetic():
    assert F(1, 3) + F(1, 6) == F(1, 2)


def test_gaussian_norm_identity():
    assert G(1, 1) * G(1, -1) == 2
    assert hash(G(2, 0)) == hash(F(2))


def test_gaussian_division():
    z = G(F(1, 2), F(-3))
    assert (z / z) == 1
    assert z * (1 / z) == 1
    with pytest.raises(ZeroDivisionError):
        z / G(0, 0)


@pytest.mark.parametrize("p, expected", [(F(0), INF), (INF, F(0)), (F(2, 3), F(3, 2))])
def test_proj_invert(p, expected):
    assert proj_invert(p) == expected


def test_infinity_singleton():
    assert pickle.loads(pickle.dumps(INF)) is INF
    assert INF != 0 and INF == INF


@pytest.mark.parametrize(
    "text, value",
    [("1/2+1/3*i", G(F(1, 2), F(1, 3))), ("-2/5*i", G(0, F(-2, 5))), ("3", G(3, 0)), ("inf", INF)],
)
def test_gaussian_parse_format(text, value):
    v = GAUSSIAN.parse(text)
    assert v == value
    assert GAUSSIAN.parse(format_scalar(v)) == v


def test_rational_parse_errors():
    with pytest.raises(ConfigError):
        RATIONAL.parse("1+i")
    with pytest.raises(ConfigError):
        RATIONAL.parse("abc", where="f:1")
    with pytest.raises(ConfigError):
        RATIONAL.parse("inf", allow_infinity=False)


def test_scalar_set_order_and_text():
    S = ScalarSet([INF, F(1), F(-1, 2), F(1)])
    assert len(S) == 3
    assert S.items[-1] is INF
    assert S.to_text() == "-1/2\n1\ninf\n"
    assert S.finite() == ScalarSet.of(F(1), F(-1, 2))


def test_random_set_deterministic():
    a = RATIONAL.random_set(random.Random(1), 10, 5)
    b = RATIONAL.random_set(random.Random(1), 10, 5)
    assert a == b and len(a) == 10


fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100)


@given(fractions, fractions, fractions, fractions)
def test_gaussian_field_axioms(a, b, c, d):
    x, y = G(a, b), G(c, d)
    assert x + y - y == x
    assert (x * y).norm() == x.norm() * y.norm()
    if y:
        assert x / y * y == x
