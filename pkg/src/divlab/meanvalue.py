"""Mean values of the weighted trigonometric series sum psi(n) e(t sqrt n) / n^(3/4).

psi(n) collects t_m^k t_p over the admissible factorizations n = m*p with
m <= N x^{-1/4}/2 and m x/(4N^2) <= p <= m x/N^2; its support lives below
sqrt(x)/4.  I_r, the mean square of the series over [r, r + r^{-1/2}], is
computed two independent ways: direct adaptive quadrature, and the exact
interval-Parseval expansion after the substitution u = sqrt(r) t,

    I_r = (1/sqrt r) sum_s |a_s|^2,
    a_s = int_{r sqrt r}^{r sqrt r + 1} G(u) e^{-2 pi i s u} du,

where each a_s is a finite sum of elementary closed-form integrals.  The
truncation |s| <= s_max is covered by a computable tail bound, which makes
the direct/Parseval comparison a genuine cross-check.
"""

import cmath
import math
from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .oscillatory import adaptive_integral
from .sawtooth import t_coeff


@dataclass(frozen=True)
class PsiParams:
    N: float
    x: float
    k: int
    Delta: float
    delta0: float

    def __post_init__(self):
        if self.N <= 0 or self.x <= 0:
            raise ValueError("N and x must be positive")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.Delta <= 0:
            raise ValueError(f"Delta must be positive, got {self.Delta}")


@dataclass(frozen=True)
class PsiWeights:
    """psi(n) for 1 <= n <= n_max = floor(sqrt(x))/4 (dense array)."""

    params: PsiParams
    values: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.values)

    def psi(self, n: int) -> float:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"n={n} outside weight domain [1, {self.n_max}]")
        return float(self.values[n - 1])

    def series_arrays(self, r: float):
        """(sqrt(n), psi(n)/n^(3/4)) for n <= r/4, for series evaluation."""
        n_used = int(math.floor(r / 4.0))
        if n_used > self.n_max:
            raise ValueError(
                f"weights cover n <= {self.n_max}, need n <= {n_used}"
            )
        n = np.arange(1, n_used + 1, dtype=np.float64)
        return np.sqrt(n), self.values[:n_used] / n**0.75


@dataclass(frozen=True)
class MeanValueResult:
    """Direct vs Parseval mean value with its truncation certificate."""

    r: float
    direct: float
    parseval: float
    a0: complex
    s_trunc: int
    tail_bound: float


def _divisors(n):
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def psi_weights(params: PsiParams) -> PsiWeights:
    """Exact psi values by divisor enumeration of each n."""
    n_max = isqrt(int(params.x)) // 4
    values = np.zeros(max(n_max, 0), dtype=np.float64)
    if n_max >= 1:
        m_cap = params.N * float(params.x) ** -0.25 / 2.0
        inv_n2 = float(params.x) / (params.N * params.N)
        for n in range(1, n_max + 1):
            acc = 0.0
            for m in _divisors(n):
                if m > m_cap:
                    break
                p = n // m
                if 0.25 * m * inv_n2 <= p <= m * inv_n2:
                    acc += t_coeff(m, params.Delta) ** params.k * t_coeff(
                        p, params.Delta
                    )
            values[n - 1] = acc
    values.setflags(write=False)
    return PsiWeights(params=params, values=values)


def trig_series(t: float, r: float, weights: PsiWeights) -> complex:
    """sum_{n <= r/4} psi(n) e^{2 pi i t sqrt n} / n^(3/4)."""
    sqrt_n, coef = weights.series_arrays(r)
    return complex(kernels.trig_series_eval(float(t), sqrt_n, coef))


def i_r_direct(r: float, weights: PsiWeights, tol: float = 1e-10) -> float:
    """Mean square over [r, r + r^{-1/2}] by adaptive quadrature."""
    if r <= 1:
        raise ValueError(f"r must exceed 1, got {r}")
    sqrt_n, coef = weights.series_arrays(r)
    if len(coef) == 0:
        return 0.0

    def f(ts):
        return np.abs(kernels.trig_series_batch(np.asarray(ts), sqrt_n, coef)) ** 2

    return adaptive_integral(f, r, r + r**-0.5, tol).real


def i_r_parseval(
    r: float,
    weights: PsiWeights,
    s_max: int,
    direct_tol: float = 1e-10,
) -> MeanValueResult:
    """Interval-Parseval evaluation of I_r plus the direct value.

    a_s is assembled per n from the elementary integral of
    e^{2 pi i u (sqrt(n/r) - s)} over the unit u-interval, so the Parseval
    side involves no quadrature at all.  tail_bound dominates the discarded
    sum_{|s| > s_max} |a_s|^2 via |a_s| <= C / (|s| - 1/2) with
    C = sum_n |psi(n)| n^{-3/4} (legitimate because sqrt(n/r) <= 1/2).
    """
    if s_max < 1:
        raise ValueError(f"s_max must be >= 1, got {s_max}")
    sqrt_n, coef = weights.series_arrays(r)
    direct = i_r_direct(r, weights, tol=direct_tol)
    if len(coef) == 0:
        return MeanValueResult(
            r=r, direct=direct, parseval=0.0, a0=0j, s_trunc=s_max, tail_bound=0.0
        )
    w = sqrt_n / math.sqrt(r)  # frequencies in u-space
    if np.any(w > 0.5 + 1e-12):
        raise AssertionError("series frequency sqrt(n/r) exceeded 1/2")
    u0 = r * math.sqrt(r)
    s = np.arange(-s_max, s_max + 1, dtype=np.float64)
    th = w[None, :] - s[:, None]
    small = np.abs(th) < 1e-12
    th_safe = np.where(small, 1.0, th)
    kern = np.where(
        small,
        np.exp(2j * np.pi * u0 * th) * (1.0 + 1j * np.pi * th),
        np.exp(2j * np.pi * u0 * th)
        * (np.exp(2j * np.pi * th) - 1.0)
        / (2j * np.pi * th_safe),
    )
    a = kern @ coef.astype(np.complex128)
    parseval = float(np.sum(np.abs(a) ** 2)) / math.sqrt(r)
    c_total = float(np.sum(np.abs(coef)))
    tail = 2.0 * c_total**2 / (s_max - 0.5) / math.sqrt(r)
    return MeanValueResult(
        r=float(r),
        direct=direct,
        parseval=parseval,
        a0=complex(a[s_max]),
        s_trunc=int(s_max),
        tail_bound=tail,
    )
