"""The sawtooth rho(x) = 1/2 - {x}, its box-average mollification, and the
Fourier coefficients of both.

rho1 is the average of rho over a window of half-width delta0 around x.  It
agrees with rho wherever the window avoids an integer; inside the window it
is the steep line s*(1-2*delta0)/(2*delta0) through zero, where s is the
signed distance to the nearest integer (derived from the defining integral;
certified against quadrature in the test suite).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

_TWO_PI = 2.0 * math.pi


def rho(x: float) -> float:
    """1/2 - {x}.  {n} = 0 at integers, so rho(n) = 1/2 (right-continuous)."""
    return 0.5 - (x - math.floor(x))


def _check_delta0(delta0: float) -> float:
    delta0 = float(delta0)
    if not 0.0 < delta0 < 0.5:
        raise ValueError(f"delta0 must lie in (0, 1/2), got {delta0}")
    return delta0


def rho1(x: float, delta0: float) -> float:
    """Box average of rho over [x - delta0, x + delta0], in closed form."""
    delta0 = _check_delta0(delta0)
    s = x - round(x)
    if abs(s) >= delta0:
        return rho(x)
    return s * (1.0 - 2.0 * delta0) / (2.0 * delta0)


def _sinc(y: float) -> float:
    """sin(y)/y, stable near zero."""
    if abs(y) < 1e-8:
        return 1.0 - y * y / 6.0
    return math.sin(y) / y


def fourier_b(m: int) -> complex:
    """Sawtooth Fourier coefficient: 1/(2 pi i m) for m != 0, else 0."""
    if m == 0:
        return 0j
    return complex(0.0, -1.0 / (_TWO_PI * m))


def fourier_g(m: int, delta0: float) -> complex:
    """Mollified coefficient: sinc-damped fourier_b; g_0 = 0."""
    delta0 = _check_delta0(delta0)
    if m == 0:
        return 0j
    return _sinc(_TWO_PI * abs(m) * delta0) * fourier_b(m)


def t_coeff(m: int, big_delta: float) -> float:
    """Averaging multiplier sin(2 pi |m| D)/(2 pi |m| D); t_0 = 1."""
    if big_delta <= 0.0:
        raise ValueError(f"Delta must be positive, got {big_delta}")
    if m == 0:
        return 1.0
    return _sinc(_TWO_PI * abs(m) * big_delta)


@dataclass(frozen=True)
class SmoothKernel:
    """Truncated coefficient family of the mollified sawtooth.

    g(m) is defined for 1 <= |m| <= trunc_m (g(0) = 0); the discarded tail
    is bounded by tail_bound():  sum_{|m|>M} |g_m| <= 2/(pi^2 M delta0).
    """

    delta0: float
    trunc_m: int

    def __post_init__(self):
        _check_delta0(self.delta0)
        if self.trunc_m < 1:
            raise ValueError(f"trunc_m must be >= 1, got {self.trunc_m}")

    def g(self, m: int) -> complex:
        if m == 0:
            return 0j
        if abs(m) > self.trunc_m:
            raise ValueError(f"|m|={abs(m)} beyond truncation {self.trunc_m}")
        return fourier_g(m, self.delta0)

    def coefficients(self) -> np.ndarray:
        """g(1..trunc_m) as a complex array (negative m by conjugation)."""
        m = np.arange(1, self.trunc_m + 1, dtype=np.float64)
        y = _TWO_PI * m * self.delta0
        return (np.sin(y) / y) * (-1j / (_TWO_PI * m))

    def tail_bound(self) -> float:
        return 2.0 / (math.pi**2 * self.trunc_m * self.delta0)


def default_trunc_m(delta0: float) -> int:
    """16 * ceil(1/delta0): drives the kernel tail below 1e-3 of the
    leading coefficient |g_1|."""
    _check_delta0(delta0)
    return 16 * math.ceil(1.0 / delta0)


def rho1_series(x: float, kernel: SmoothKernel):
    """Truncated Fourier series of rho1 plus a rigorous tail bound.

    Returns (value, tail_bound); |value - rho1(x, delta0)| <= tail_bound.
    """
    value = float(kernels.rho1_series_eval(float(x), kernel.delta0, kernel.trunc_m))
    return value, kernel.tail_bound()
