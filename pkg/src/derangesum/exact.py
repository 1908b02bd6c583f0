"""Exact arithmetic kernel.

Integers are Python ints and rationals are :class:`fractions.Fraction`.  On
top of those this module provides rational interval enclosures of ``e`` and
``1/e`` and the :class:`ELaurent` type, an exact real ``a + b*e + c/e`` with
rational coefficients whose floor and nearest integer are decided by
adaptively refined enclosures.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Union

RationalLike = Union[int, Fraction]

DEFAULT_PRECISION_CAP = 10_000
PRECISION_CAP_ENV = "DERANGESUM_PRECISION_CAP"
MIN_PRECISION = 32


class PrecisionExhausted(ArithmeticError):
    """Raised when an enclosure cannot decide a floor or sign below the cap."""


def precision_cap() -> int:
    """Return the series-length cap, honouring ``DERANGESUM_PRECISION_CAP``."""
    raw = os.environ.get(PRECISION_CAP_ENV)
    if raw is None:
        return DEFAULT_PRECISION_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{PRECISION_CAP_ENV} must be positive, got {raw!r}")
    return cap


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k lies outside 0..n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def floor_rational(q: RationalLike) -> int:
    """Floor toward minus infinity."""
    q = _as_fraction(q)
    return q.numerator // q.denominator


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]``.

    Every operation is exact, so results are the tight image of the
    operands; conservativeness is automatic.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _as_fraction(self.lo), _as_fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: RationalLike) -> Interval:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        other = _as_fraction(other)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: RationalLike) -> Interval:
        k = _as_fraction(k)
        if k >= 0:
            return Interval(k * self.lo, k * self.hi)
        return Interval(k * self.hi, k * self.lo)

    def __mul__(self, other):
        if not isinstance(other, Interval):
            return self.scale(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)


@lru_cache(maxsize=1024)
def e_enclosure(K: int) -> Interval:
    """``[s_K, s_K + 1/(K!*K)]`` where ``s_K`` is the K-th partial sum of 1/k!.

    The tail of the series after ``K`` terms is strictly below ``1/(K!*K)``,
    so ``e`` lies in the open interior.
    """
    if K < 1:
        raise ValueError(f"e_enclosure requires K >= 1, got {K}")
    # sum_{k=0..K} K!/k!, accumulated from k = K downwards
    term = 1
    total = 1
    for j in range(K, 0, -1):
        term *= j
        total += term
    kfact = term
    lo = Fraction(total, kfact)
    return Interval(lo, lo + Fraction(1, kfact * K))


@lru_cache(maxsize=1024)
def e_inverse_enclosure(K: int) -> Interval:
    return e_enclosure(K).reciprocal()


@dataclass(frozen=True)
class ELaurent:
    """The real number ``a + b*e + c/e`` with rational coefficients.

    Since 1, e and 1/e are linearly independent over the rationals, two values
    are equal exactly when their coefficient triples are.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _as_fraction(getattr(self, name)))

    @classmethod
    def e(cls) -> ELaurent:
        return cls(0, 1, 0)

    @classmethod
    def e_inv(cls) -> ELaurent:
        return cls(0, 0, 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0

    def _coerce(self, other) -> ELaurent:
        if isinstance(other, ELaurent):
            return other
        return ELaurent(_as_fraction(other))

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ELaurent(self.a + o.a, self.b + o.b, self.c + o.c)

    __radd__ = __add__

    def __neg__(self) -> ELaurent:
        return ELaurent(-self.a, -self.b, -self.c)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, ELaurent):
            return NotImplemented
        try:
            k = _as_fraction(k)
        except TypeError:
            return NotImplemented
        return ELaurent(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = _as_fraction(k)
        return ELaurent(self.a / k, self.b / k, self.c / k)

    def mul_e(self) -> ELaurent:
        """Multiply by ``e``; only defined when the result stays in the span."""
        if self.b != 0:
            raise ValueError("e * (b*e) leaves the span of {1, e, 1/e}")
        return ELaurent(self.c, self.a, 0)

    def __str__(self) -> str:
        return f"{self.a} + ({self.b})*e + ({self.c})/e"


def _to_elaurent(x) -> ELaurent:
    return x if isinstance(x, ELaurent) else ELaurent(_as_fraction(x))


def el_eval(x: ELaurent, K: int) -> Interval:
    """Enclosure of ``x`` using the order-``K`` enclosures of e and 1/e."""
    x = _to_elaurent(x)
    iv = Interval.point(x.a)
    if x.b:
        iv = iv + e_enclosure(K).scale(x.b)
    if x.c:
        iv = iv + e_inverse_enclosure(K).scale(x.c)
    return iv


def _start_precision(x: ELaurent) -> int:
    biggest = max(abs(x.a.numerator), abs(x.b.numerator), abs(x.c.numerator))
    return max(MIN_PRECISION, len(str(biggest)))


def el_floor(x: ELaurent, cap: int | None = None) -> int:
    """Exact ``floor(a + b*e + c/e)``.

    Rational inputs are floored directly.  Otherwise the enclosure order is
    doubled until both endpoints share a floor.
    """
    x = _to_elaurent(x)
    if x.is_rational:
        return floor_rational(x.a)
    cap = precision_cap() if cap is None else cap
    K = _start_precision(x)
    while K <= cap:
        iv = el_eval(x, K)
        lo = floor_rational(iv.lo)
        if lo == floor_rational(iv.hi):
            return lo
        K *= 2
    raise PrecisionExhausted(f"floor of {x} unresolved at precision cap {cap}")


def el_nearest(x: ELaurent, cap: int | None = None) -> int:
    """Nearest integer to ``x``; exact halves round up."""
    return el_floor(_to_elaurent(x) + Fraction(1, 2), cap=cap)


def el_sign(x: ELaurent, cap: int | None = None) -> int:
    """Certified sign of ``x`` (-1, 0 or 1)."""
    x = _to_elaurent(x)
    if x.is_rational:
        return (x.a > 0) - (x.a < 0)
    cap = precision_cap() if cap is None else cap
    K = _start_precision(x)
    while K <= cap:
        iv = el_eval(x, K)
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
        K *= 2
    raise PrecisionExhausted(f"sign of {x} unresolved at precision cap {cap}")


def el_fractional_part(x: ELaurent) -> ELaurent:
    """``{x} = x - floor(x)`` as an exact ELaurent value."""
    x = _to_elaurent(x)
    return x - el_floor(x)


def el_to_float(x: ELaurent, K: int = 64) -> float:
    """Midpoint of the order-``K`` enclosure, rounded to a float."""
    return float(el_eval(x, K).midpoint)
