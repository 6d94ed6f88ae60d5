"""Exact divisor-function arithmetic.

tau(n), a segmented divisor-count sieve, the O(sqrt x) summatory function
D(x), the smooth main term x(log x + 2*gamma - 1), and the error term
delta(x) = D(x) - main.  D is exact integer arithmetic throughout; the main
term is carried in double-double so that delta stays trustworthy to well
below 1e-3 even at x = 1e12, where plain binary64 rounding alone costs ~3e-3.
"""

import struct
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .errors import ResourceLimitError
from .xfloat import DoubleDouble, dd_add, dd_from_int, dd_mul, dd_sub, log_dd

#: Euler-Mascheroni constant, 50 decimal digits.
EULER_GAMMA_DIGITS = "0.57721566490153286060651209008240243104215933593992"

#: Range guard for exact summation: keeps every intermediate inside int64.
X_MAX = 10**12

#: Largest allowed sieve window (hi - lo).
SIEVE_WINDOW_MAX = 10**8

#: Absolute error of main_term(x) is bounded by this coefficient times x
#: (libm exp rounding, ~1 ulp, dominates; everything else is error-free).
MAIN_ERR_COEFF = 5e-16

_TAU_MAGIC = b"TAU1"


@dataclass(frozen=True)
class GammaConst:
    """Euler's constant with enough digits that it never limits accuracy."""

    value: Decimal = Decimal(EULER_GAMMA_DIGITS)

    def __float__(self):
        return float(self.value)


EULER_GAMMA = GammaConst()


def _dd_of_decimal(d: Decimal) -> DoubleDouble:
    hi = float(d)
    return DoubleDouble(hi, float(d - Decimal(hi)))


# 2*gamma - 1 as a double-double, exact to ~1e-33
_G2M1 = _dd_of_decimal(2 * EULER_GAMMA.value - 1)


@dataclass(frozen=True)
class TauTable:
    """Window of divisor counts: values[i] = tau(lo + i)."""

    lo: int
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    @property
    def hi(self):
        return self.lo + len(self.values) - 1

    def at(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"n={n} outside window [{self.lo}, {self.hi}]")
        return int(self.values[n - self.lo])


@dataclass(frozen=True)
class ErrorSample:
    """One measurement of the divisor-sum error term at integer x."""

    x: int
    d: int
    main: DoubleDouble
    delta: float
    main_err_bound: float


def tau(n: int) -> int:
    """Number of positive divisors of n, by trial-division factorization."""
    n = int(n)
    if not 1 <= n <= 2**63 - 1:
        raise ValueError(f"tau requires 1 <= n <= 2^63-1, got {n}")
    count = 1
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        count *= e + 1
    p, step = 5, 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        count *= e + 1
        p += step
        step = 6 - step  # 5, 7, 11, 13, ...
    if m > 1:
        count *= 2
    return count


def tau_sieve(lo: int, hi: int) -> TauTable:
    """Divisor counts for the whole window [lo, hi] by a segmented sieve."""
    lo, hi = int(lo), int(hi)
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi - lo > SIEVE_WINDOW_MAX:
        raise ResourceLimitError(
            f"sieve window {hi - lo} exceeds cap {SIEVE_WINDOW_MAX}"
        )
    values = np.zeros(hi - lo + 1, dtype=np.uint32)
    kernels.tau_fill(lo, values)
    values.setflags(write=False)
    return TauTable(lo=lo, values=values)


def save_tau_table(table: TauTable, path) -> None:
    """Binary cache: little-endian 'TAU1', lo u64, len u64, then u32 counts."""
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sQQ", _TAU_MAGIC, table.lo, len(table.values)))
        fh.write(np.ascontiguousarray(table.values, dtype="<u4").tobytes())


def load_tau_table(path) -> TauTable:
    with open(path, "rb") as fh:
        head = fh.read(20)
        if len(head) != 20:
            raise ValueError(f"{path}: truncated header")
        magic, lo, n = struct.unpack("<4sQQ", head)
        if magic != _TAU_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        raw = fh.read(4 * n)
        if len(raw) != 4 * n:
            raise ValueError(f"{path}: truncated payload")
    values = np.frombuffer(raw, dtype="<u4").astype(np.uint32)
    values.setflags(write=False)
    return TauTable(lo=int(lo), values=values)


def divisor_sum_exact(x: int) -> int:
    """D(x) = sum_{n<=x} tau(n), exactly, in O(sqrt x) time.

    Counts lattice points under ab <= x by the symmetric split at sqrt(x):
    D(x) = 2*sum_{a<=sqrt(x)} floor(x/a) - floor(sqrt(x))^2.
    """
    x = int(x)
    if x < 1:
        raise ValueError(f"divisor_sum_exact requires x >= 1, got {x}")
    if x > X_MAX:
        raise ResourceLimitError(f"x={x} exceeds exactness guard {X_MAX}")
    return int(kernels.divisor_summatory(x))


def main_term(x) -> DoubleDouble:
    """x * (log x + 2*gamma - 1) with absolute error <= MAIN_ERR_COEFF * x."""
    xf = float(x)
    if xf < 1.0:
        raise ValueError(f"main_term requires x >= 1, got {x}")
    s = dd_add(log_dd(xf), _G2M1)
    return dd_mul(DoubleDouble(xf, 0.0), s)


def main_term_reference(x, prec: int = 50) -> Decimal:
    """Independent extended-precision evaluation (Decimal ln)."""
    with localcontext() as ctx:
        ctx.prec = prec
        xd = Decimal(x)
        return xd * (xd.ln() + (2 * Decimal(EULER_GAMMA_DIGITS) - 1))


def delta(x: int) -> ErrorSample:
    """D(x) minus the main term, as an ErrorSample."""
    d = divisor_sum_exact(x)
    main = main_term(x)
    diff = dd_sub(dd_from_int(d), main)
    return ErrorSample(
        x=int(x),
        d=d,
        main=main,
        delta=float(diff),
        main_err_bound=MAIN_ERR_COEFF * float(x),
    )


def lattice_count(x) -> int:
    """#{(a, b) : a, b >= 1, ab <= x} for real x >= 1.

    Equals divisor_sum_exact(floor(x)) at integer x.  Non-integer x is
    handled in exact rational arithmetic so the floor of x/a never suffers
    a float off-by-one.
    """
    xf = Fraction(x)
    if xf < 1:
        raise ValueError(f"lattice_count requires x >= 1, got {x}")
    if xf > X_MAX:
        raise ResourceLimitError(f"x={x} exceeds exactness guard {X_MAX}")
    if xf.denominator == 1:
        return divisor_sum_exact(int(xf))
    num, den = xf.numerator, xf.denominator
    s = isqrt(num // den)
    total = 0
    for a in range(1, s + 1):
        total += num // (den * a)
    return 2 * total - s * s
