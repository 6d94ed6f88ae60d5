"""Error-free float transforms: double-double arithmetic for the handful of
places where plain binary64 is not enough (the main term at x ~ 1e12 loses
~3e-3 to rounding; its error budget is 1e-3)."""

import math
from typing import NamedTuple


class DoubleDouble(NamedTuple):
    """Unevaluated sum hi + lo, |lo| <= 0.5 ulp(hi).  Carries ~106 bits."""

    hi: float
    lo: float

    def __float__(self):
        return self.hi + self.lo

    def __str__(self):
        from decimal import Decimal

        return str(Decimal(self.hi) + Decimal(self.lo))


def two_sum(a, b):
    """s, e with s + e == a + b exactly (Knuth)."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """Assumes |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


_SPLITTER = 134217729.0  # 2^27 + 1


def two_prod(a, b):
    """p, e with p + e == a * b exactly (Dekker split; no FMA dependency)."""
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def dd_add(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    s, e = two_sum(x.hi, y.hi)
    e += x.lo + y.lo
    h, l = quick_two_sum(s, e)
    return DoubleDouble(h, l)


def dd_sub(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    return dd_add(x, DoubleDouble(-y.hi, -y.lo))


def dd_mul(x: DoubleDouble, y: DoubleDouble) -> DoubleDouble:
    p, e = two_prod(x.hi, y.hi)
    e += x.hi * y.lo + x.lo * y.hi
    h, l = quick_two_sum(p, e)
    return DoubleDouble(h, l)


def dd_from_int(n: int) -> DoubleDouble:
    """Exact for |n| < 2^106."""
    hi = float(n)
    return DoubleDouble(hi, float(n - int(hi)))


def log_dd(x: float) -> DoubleDouble:
    """log(x) to roughly 2e-16 absolute error.

    One correction step on top of libm: with y = log(x), the residual
    c = x*exp(-y) - 1 is tiny, and log(x) = y + log1p(c).  The product
    x*exp(-y) is formed error-free with two_prod, so the only noise left
    is the rounding of exp itself (~1 ulp of 1.0).
    """
    if x <= 0.0:
        raise ValueError("log_dd requires x > 0")
    y = math.log(x)
    e = math.exp(-y)
    p, pe = two_prod(x, e)
    c = (p - 1.0) + pe
    corr = c - 0.5 * c * c
    h, l = two_sum(y, corr)
    return DoubleDouble(h, l)
