"""Exact scalars: rationals, Gaussian rationals and the projective line over them.

Rationals are plain :class:`fractions.Fraction` values (already canonical and
arbitrary precision).  Gaussian rationals ``p/q + r/s*i`` are provided by
:class:`GaussianRational`.  The point at infinity of the projective line is the
singleton :data:`INF`.

Text form, used verbatim in every CSV/JSON/config file::

    3        -1/2        1/2+1/3*i        -2/5*i        inf
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from numbers import Rational

from .errors import ConfigError

__all__ = [
    "Fraction",
    "GaussianRational",
    "INF",
    "Field",
    "RATIONAL",
    "GAUSSIAN",
    "get_field",
    "proj_invert",
    "is_inf",
    "format_scalar",
    "sort_key",
    "ScalarSet",
]


class _Infinity:
    """The point at infinity of the projective line. Equal only to itself."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return 0x1F1F1F1F

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, Rational):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def proj_invert(p):
    """``0 -> inf``, ``inf -> 0``, ``x -> 1/x``."""
    if p is INF:
        return Fraction(0)
    if not p:
        return INF
    return 1 / p


def format_scalar(x) -> str:
    if x is INF:
        return "inf"
    if isinstance(x, GaussianRational):
        if not x.im:
            return str(x.re)
        if not x.re:
            return f"{x.im}*i"
        sign = "-" if x.im < 0 else "+"
        return f"{x.re}{sign}{abs(x.im)}*i"
    return str(Fraction(x))


def sort_key(x):
    """Deterministic order: reals numerically, then Gaussians by text, then inf."""
    if x is INF:
        return (2, 0, 0, "")
    if isinstance(x, GaussianRational):
        return (1, 0, 0, format_scalar(x))
    # float rounding is monotone, so the float decides all but exact-float ties
    try:
        approx = float(x)
    except OverflowError:
        approx = math.inf if x > 0 else -math.inf
    return (0, approx, x, "")


def _parse_fraction(text: str, where=None) -> Fraction:
    t = text.strip()
    if not t:
        raise ConfigError(f"empty scalar in {text!r}", where)
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed rational {text!r}", where) from exc


def _parse_gaussian(text: str, where=None) -> GaussianRational:
    t = text.replace(" ", "")
    if not t.endswith("i"):
        return GaussianRational(_parse_fraction(t, where), 0)
    body = t[:-1]
    if body.endswith("*"):
        body = body[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0 and body[split - 1] not in "eE/":
        re_text, im_text = body[:split], body[split:]
    else:
        re_text, im_text = "", body
    if im_text in ("", "+"):
        im = Fraction(1)
    elif im_text == "-":
        im = Fraction(-1)
    else:
        im = _parse_fraction(im_text, where)
    re = _parse_fraction(re_text, where) if re_text else Fraction(0)
    return GaussianRational(re, im)


class Field:
    """One scalar domain per experiment: Q (``rational``) or Q(i) (``gaussian``)."""

    def __init__(self, name: str):
        if name not in ("rational", "gaussian"):
            raise ConfigError(f"unknown scalar mode {name!r} (expected rational or gaussian)")
        self.name = name
        self.ordered = name == "rational"

    def __repr__(self):
        return f"Field({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if x is INF:
            return x
        if self.name == "rational":
            if isinstance(x, GaussianRational):
                if x.im:
                    raise TypeError(f"{x} is not real")
                return x.re
            return _as_fraction(x)
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x, 0)

    def parse(self, text: str, *, allow_infinity=True, where=None):
        t = text.strip()
        if t.lower() in ("inf", "infinity", "oo"):
            if not allow_infinity:
                raise ConfigError("infinity not allowed here", where)
            return INF
        if self.name == "rational":
            if "i" in t:
                raise ConfigError(f"complex value {t!r} in rational mode", where)
            return _parse_fraction(t, where)
        return _parse_gaussian(t, where)

    def random(self, rng: random.Random, height: int):
        """Random element with numerators in [-height, height], denominators in [1, height]."""

        def q():
            return Fraction(rng.randint(-height, height), rng.randint(1, height))

        if self.name == "rational":
            return q()
        return GaussianRational(q(), q())

    def random_set(self, rng: random.Random, size: int, height: int, *, nonzero=False):
        out = set()
        while len(out) < size:
            x = self.random(rng, height)
            if nonzero and not x:
                continue
            out.add(x)
        return ScalarSet(out)


RATIONAL = Field("rational")
GAUSSIAN = Field("gaussian")


def get_field(name) -> Field:
    if isinstance(name, Field):
        return name
    return RATIONAL if name == "rational" else GAUSSIAN if name == "gaussian" else Field(name)


class ScalarSet:
    """Immutable deduplicated set of scalars with deterministic iteration order."""

    __slots__ = ("_members", "_items")

    def __init__(self, values=()):
        members = frozenset(values)
        self._members = members
        self._items = tuple(sorted(members, key=sort_key))

    @classmethod
    def of(cls, *values):
        return cls(Fraction(v) if isinstance(v, (int, str)) else v for v in values)

    @property
    def items(self) -> tuple:
        return self._items

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        if isinstance(other, ScalarSet):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __or__(self, other):
        return ScalarSet(self._members | set(other))

    def __repr__(self):
        body = ", ".join(format_scalar(x) for x in self._items[:12])
        more = ", ..." if len(self) > 12 else ""
        return f"ScalarSet({{{body}{more}}}, size={len(self)})"

    def has_infinity(self) -> bool:
        return INF in self._members

    def finite(self) -> "ScalarSet":
        return ScalarSet(x for x in self._members if x is not INF)

    def map(self, f) -> "ScalarSet":
        return ScalarSet(f(x) for x in self._items)

    def to_text(self) -> str:
        return "".join(format_scalar(x) + "\n" for x in self._items)

    def to_json(self) -> str:
        return json.dumps([format_scalar(x) for x in self._items])
