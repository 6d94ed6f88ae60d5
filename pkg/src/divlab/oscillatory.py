"""Oscillatory integrals int e^{2 pi i f(u)} du and their certificates.

The integrator is panel-adaptive Gauss-Legendre: an oscillation-aware
pre-split puts at most ~1.5 phase cycles in each seed panel (>= 10 nodes per
cycle with the 15-point rule), then panels are bisected until the embedded
error estimate |parent - (left + right)| meets the per-panel share of the
tolerance.  All phase callables must accept numpy arrays.

Derivative-test certificates compare |integral| against 4/delta (first
derivative bounded below, monotone) and 12/sqrt(A) (curvature bounded
below).  i_pm evaluates the block integrals with phase m*x/u - p*u
("minus") or m*x/u + p*u ("plus"); only the plus convention has an interior
stationary point u* = sqrt(m x / p), and i_pm_stationary gives its leading
asymptotic term.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import ResourceLimitError
from .sawtooth import SmoothKernel, default_trunc_m

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)

PHASE_SIGNS = ("plus", "minus")


@dataclass(frozen=True)
class OscSpec:
    """One block integral over [N, 2N+1] with phase m*x/u (+|-) p*u."""

    m: int
    p: int
    N: float
    x: float
    phase_sign: str

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.N <= 0 or self.x <= 0:
            raise ValueError("N and x must be positive")
        if self.phase_sign not in PHASE_SIGNS:
            raise ValueError(f"phase_sign must be one of {PHASE_SIGNS}")

    @property
    def interval(self):
        return self.N, 2.0 * self.N + 1.0


@dataclass(frozen=True)
class SNParams:
    """Truncated double-sum configuration: block (N, 2N], smoothing window
    delta0, truncation M (default 16*ceil(1/delta0)), k extra averaging
    passes of width Delta."""

    x: float
    u: float
    N: float
    delta0: float
    k: int
    Delta: float
    M: int = 0  # 0 selects the default truncation

    def __post_init__(self):
        if not 0.0 < self.delta0 < 0.5:
            raise ValueError(f"delta0 must lie in (0, 1/2), got {self.delta0}")
        if self.M == 0:
            object.__setattr__(self, "M", default_trunc_m(self.delta0))
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.Delta <= 0.0:
            raise ValueError(f"Delta must be positive, got {self.Delta}")
        if self.N <= 0.0 or self.x <= 0.0:
            raise ValueError("N and x must be positive")


@dataclass(frozen=True)
class BoundCheck:
    """Result of a derivative-test certificate."""

    value: complex
    abs_value: float
    bound: float
    passed: bool


def _gl_values(f, lo, hi):
    """15-point Gauss-Legendre on each panel [lo_i, hi_i] (batched)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(f(pts.ravel())).reshape(pts.shape)
    return (vals @ _WEIGHTS) * half


def adaptive_integral(
    f: Callable,
    a: float,
    b: float,
    tol: float,
    max_panels: int = 400_000,
    initial_edges=None,
) -> complex:
    """Globally adaptive integral of a vectorized (possibly complex) f."""
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if initial_edges is None:
        edges = np.linspace(a, b, 9)
    else:
        edges = np.asarray(initial_edges, dtype=np.float64)
    lo = edges[:-1]
    hi = edges[1:]
    parent = _gl_values(f, lo, hi)
    span = b - a
    done_lo = []
    done_val = []
    processed = len(lo)
    while len(lo):
        if processed > max_panels:
            raise ResourceLimitError(
                f"quadrature exceeded panel budget {max_panels}"
            )
        mid = 0.5 * (lo + hi)
        all_lo = np.concatenate([lo, mid])
        all_hi = np.concatenate([mid, hi])
        halves = _gl_values(f, all_lo, all_hi)
        n = len(lo)
        child_sum = halves[:n] + halves[n:]
        err = np.abs(parent - child_sum)
        width = hi - lo
        accept = (err <= tol * width / span) | (width <= 1e-13 * span)
        done_lo.append(lo[accept])
        done_val.append(child_sum[accept])
        keep = ~accept
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        parent = np.concatenate([halves[:n][keep], halves[n:][keep]])
        processed += 2 * int(keep.sum())
    vals = np.concatenate(done_val)
    order = np.argsort(np.concatenate(done_lo), kind="stable")
    vals = vals[order]
    if np.iscomplexobj(vals):
        return complex(math.fsum(vals.real), math.fsum(vals.imag))
    return complex(math.fsum(vals), 0.0)


def _oscillation_edges(phase, a, b):
    """Panel edges packing ~1.5 estimated phase cycles per seed panel."""
    n = 513
    for _ in range(3):
        u = np.linspace(a, b, n)
        ph = np.asarray(phase(u), dtype=np.float64)
        dph = np.abs(np.diff(ph))
        osc = float(dph.sum())
        if osc <= n / 8.0:
            break
        n = int(min(8 * osc + 513, 4_000_000))
    n_panels = int(np.clip(math.ceil(osc / 1.5) + 4, 8, 30_000))
    density = dph + (osc + 1.0) / len(dph)  # keep edges strictly increasing
    cum = np.concatenate([[0.0], np.cumsum(density)])
    targets = np.linspace(0.0, cum[-1], n_panels + 1)
    edges = np.interp(targets, cum, u)
    edges[0], edges[-1] = a, b
    return edges


def osc_integral(
    phase: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    max_panels: int = 400_000,
) -> complex:
    """int_a^b e^{2 pi i phase(u)} du to absolute accuracy ~tol."""
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    edges = _oscillation_edges(phase, a, b)
    two_pi_i = 2j * math.pi

    def f(u):
        return np.exp(two_pi_i * np.asarray(phase(u)))

    return adaptive_integral(f, a, b, tol, max_panels, initial_edges=edges)


def check_first_derivative_bound(
    phase: Callable, a: float, b: float, deriv_min: float, tol: float = 1e-8
) -> BoundCheck:
    """Certificate |int e^{2 pi i f}| <= 4/delta for monotone f' >= delta > 0.

    deriv_min is certified by the caller (it is a property of the phase
    family, not something the integrator can prove)."""
    if deriv_min <= 0:
        raise ValueError(f"deriv_min must be positive, got {deriv_min}")
    value = osc_integral(phase, a, b, tol=min(tol, 1e-8))
    bound = 4.0 / deriv_min
    return BoundCheck(value, abs(value), bound, abs(value) <= bound + tol)


def check_second_derivative_bound(
    phase: Callable, a: float, b: float, curv_min: float, tol: float = 1e-8
) -> BoundCheck:
    """Certificate |int e^{2 pi i f}| <= 12/sqrt(A) for f'' >= A > 0."""
    if curv_min <= 0:
        raise ValueError(f"curv_min must be positive, got {curv_min}")
    value = osc_integral(phase, a, b, tol=min(tol, 1e-8))
    bound = 12.0 / math.sqrt(curv_min)
    return BoundCheck(value, abs(value), bound, abs(value) <= bound + tol)


def _phase_of(spec: OscSpec):
    m, p, x = spec.m, spec.p, spec.x
    if spec.phase_sign == "minus":
        return lambda u: m * x / u - p * u
    return lambda u: m * x / u + p * u


def i_pm(spec: OscSpec, tol: float = 1e-10) -> complex:
    """Block integral of the chosen phase convention over [N, 2N+1]."""
    lo, hi = spec.interval
    return osc_integral(_phase_of(spec), lo, hi, tol=tol)


def i_pm_stationary(spec: OscSpec):
    """Leading stationary-phase term of i_pm with the plus convention.

    The phase m x/u + p u is stationary at u* = sqrt(m x / p) with value
    2 sqrt(m p x) and curvature 2 p^{3/2} (m x)^{-1/2}; the standard leading
    term is e^{i pi/4} / sqrt(curvature) times the phase factor, i.e.

        (1 + i)/2 * (m x)^{1/4} * p^{-3/4} * e^{4 pi i sqrt(m p x)}.

    Returns (main, valid); valid is False when u* falls outside [N, 2N+1],
    in which case main = 0.
    """
    if spec.phase_sign != "plus":
        raise ValueError("stationary expansion needs phase_sign='plus'")
    if spec.m < 1:
        raise ValueError("stationary expansion needs m >= 1")
    m, p, x = spec.m, spec.p, spec.x
    lo, hi = spec.interval
    u_star = math.sqrt(m * x / p)
    if not lo <= u_star <= hi:
        return 0j, False
    amp = (m * x) ** 0.25 * p**-0.75
    main = (0.5 + 0.5j) * amp * np.exp(4j * math.pi * math.sqrt(m * p * x))
    return complex(main), True


def s_n_sum(params: SNParams):
    """Truncated double sum over N < a <= 2N, 1 <= |m| <= M of
    t_m^k g_m e(m x/(a+u)), plus the kernel-tail bound of the truncation.

    Returns (value, tail_bound).  k = 0 recovers the unsmoothed sum.
    """
    a_lo = math.floor(params.N) + 1
    a_hi = math.floor(2.0 * params.N)
    if a_hi < a_lo:
        return 0j, 0.0
    value = kernels.sn_sum_eval(
        float(params.x),
        float(params.u),
        a_lo,
        a_hi,
        params.delta0,
        params.M,
        params.k,
        params.Delta,
    )
    kern = SmoothKernel(delta0=params.delta0, trunc_m=params.M)
    tail = (a_hi - a_lo + 1) * kern.tail_bound()
    return complex(value), tail
