"""Randomized verification suites behind `divlab verify`.

Each suite draws a seeded family of cases, checks the advertised bound or
identity on every one, and reports pass/fail counts.  The acceptance tests
call the same functions with their own case counts, so the CLI and pytest
exercise identical code.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .dirichlet_approx import approx_2d
from .divisors import delta, tau
from .meanvalue import PsiParams, i_r_parseval, psi_weights
from .oscillatory import (
    OscSpec,
    check_first_derivative_bound,
    check_second_derivative_bound,
    i_pm,
    i_pm_stationary,
)
from .sawtooth import SmoothKernel, rho, rho1, rho1_series
from .shifts import s_sum, shifted_lattice_rational, shifted_lattice_real


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    lines: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _adaptive_simpson(f, a, b, tol, max_depth=55):
    """Blind adaptive Simpson.  The depth cap terminates jump panels, whose
    final width (b-a)/2^55 makes their localization error negligible."""
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return rec(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) + rec(
            m, b, fm, frm, fb, right, tol / 2.0, depth + 1
        )

    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return rec(a, b, fa, fm, fb, whole, tol, 0)


def rho1_quadrature(x: float, delta0: float) -> float:
    """rho1 straight from its defining window average (no closed form)."""
    val = _adaptive_simpson(
        lambda t: rho(x + t), -delta0, delta0, tol=1e-14 * max(2 * delta0, 1e-3)
    )
    return val / (2.0 * delta0)


def suite_lemma1(seed: int, cases: int) -> SuiteResult:
    """Monotone phases with f' >= delta > 0: |integral| <= 4/delta."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        a0 = rng.uniform(-4.0, 4.0)
        span = rng.uniform(0.3, 6.0)
        b0 = a0 + span
        dmin = 10.0 ** rng.uniform(-1.5, 0.7)
        kind = int(rng.integers(0, 3))
        if kind == 0:
            c = rng.uniform(0.0, 80.0 / span**2)
            phase = lambda u, a0=a0, d=dmin, c=c: d * u + 0.5 * c * (u - a0) ** 2
        elif kind == 1:
            c = rng.uniform(0.0, 120.0 / span**3)
            phase = lambda u, a0=a0, d=dmin, c=c: d * u + c * (u - a0) ** 3 / 3.0
        else:
            s = rng.uniform(0.2, 2.0)
            c = rng.uniform(0.0, 40.0 / math.log((span + s) / s))
            phase = lambda u, a0=a0, d=dmin, c=c, s=s: d * u + c * np.log(u - a0 + s)
        chk = check_first_derivative_bound(phase, a0, b0, dmin, tol=1e-6)
        worst = max(worst, chk.abs_value * dmin)
        if not chk.passed:
            failures += 1
    lines = [f"worst |I|*delta = {worst:.6f} (bound 4)"]
    return SuiteResult("lemma1", cases, failures, lines)


def suite_lemma2(seed: int, cases: int) -> SuiteResult:
    """Convex phases with f'' >= A > 0: |integral| <= 12/sqrt(A)."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(cases):
        curv = 10.0 ** rng.uniform(-1.0, 1.5)
        kind = int(rng.integers(0, 3))
        if kind == 2:
            half = min(
                rng.uniform(0.2, 3.0),
                0.9 * math.acosh(1.0 + 40.0 / curv) if curv < 40 else 0.5,
            )
        else:
            half = rng.uniform(0.2, min(3.0, math.sqrt(80.0 / curv)))
        m0 = rng.uniform(-3.0, 3.0)
        a0, b0 = m0 - half, m0 + half
        slope = rng.uniform(-15.0 / half, 15.0 / half)
        if kind == 0:
            c = rng.uniform(0.0, curv)  # f'' = A + 2c >= A
            phase = lambda u, m0=m0, s=slope, A=curv, c=c: s * (u - m0) + (
                A / 2.0 + c
            ) * (u - m0) ** 2
        elif kind == 1:
            c = rng.uniform(0.0, 10.0 / half**4)
            phase = lambda u, m0=m0, s=slope, A=curv, c=c: (
                s * (u - m0) + (A / 2.0) * (u - m0) ** 2 + c * (u - m0) ** 4
            )
        else:
            c = rng.uniform(0.0, curv)
            phase = lambda u, m0=m0, s=slope, A=curv, c=c: s * (u - m0) + (
                A + c
            ) * np.cosh(u - m0)
        chk = check_second_derivative_bound(phase, a0, b0, curv, tol=1e-6)
        worst = max(worst, chk.abs_value * math.sqrt(curv))
        if not chk.passed:
            failures += 1
    lines = [f"worst |I|*sqrt(A) = {worst:.6f} (bound 12)"]
    return SuiteResult("lemma2", cases, failures, lines)


def suite_lemma4(seed: int, cases: int) -> SuiteResult:
    """Mollified sawtooth: closed form vs window-average quadrature, the
    outside-window identity, and the truncated-series tail certificate."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    kern = SmoothKernel(delta0=0.08, trunc_m=4096)
    for _ in range(cases):
        x = rng.uniform(-30.0, 30.0)
        d0 = 10.0 ** rng.uniform(-2.3, math.log10(0.49))
        closed = rho1(x, d0)
        quad = rho1_quadrature(x, d0)
        dev = abs(closed - quad)
        worst = max(worst, dev)
        if dev > 1e-12:
            failures += 1
        # outside the window the average IS the sawtooth, bit for bit
        n0 = int(rng.integers(-20, 20))
        s = rng.uniform(1.02 * d0 + 1e-12, 0.499)
        pt = n0 + (s if rng.random() < 0.5 else -s)
        if abs(pt - round(pt)) >= d0 and rho1(pt, d0) != rho(pt):
            failures += 1
        xs = rng.uniform(-2.0, 2.0)
        val, tail = rho1_series(xs, kern)
        if abs(val - rho1(xs, kern.delta0)) > tail:
            failures += 1
    lines = [f"worst |closed - quadrature| = {worst:.3e} (tolerance 1e-12)"]
    return SuiteResult("lemma4", cases, failures, lines)


def _brute_shifted(x: int, a: int, q: int):
    u = np.arange(1, x + 1, dtype=np.int64)
    d = q * u + a
    target = q * x
    v = target // d
    ok = (d * v == target) & (v >= 1)
    return sorted(zip(u[ok].tolist(), v[ok].tolist()))


def suite_lemma5(seed: int, cases: int, x_max: int = 10**4) -> SuiteResult:
    """Shifted-hyperbola points: divisor enumeration vs brute force over u,
    the tau(qx) cardinality bound, and rational/real path agreement."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst_count = 0
    for _ in range(cases):
        x = int(rng.integers(1, x_max + 1))
        q = int(rng.integers(1, 48))
        a = int(rng.integers(0, q))
        shift = Fraction(a, q)
        pts = shifted_lattice_rational(x, shift)
        if pts != _brute_shifted(x, shift.numerator, shift.denominator):
            failures += 1
        if len(pts) > tau(shift.denominator * x):
            failures += 1
        if pts != shifted_lattice_real(x, shift, tol=0.0):
            failures += 1
        worst_count = max(worst_count, len(pts))
    lines = [f"largest point count seen = {worst_count}"]
    return SuiteResult("lemma5", cases, failures, lines)


def suite_lemma7(seed: int, cases: int) -> SuiteResult:
    """Simultaneous approximation invariants, checked on the raw inputs."""
    rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(cases):
        tau_v = 10.0 ** rng.uniform(math.log10(2.0), 4.0)
        xi = rng.random()
        eta = rng.random()
        res = approx_2d(xi, eta, tau_v)
        rt = math.sqrt(tau_v)
        ok = (
            1 <= res.q <= (1.0 + rt) ** 2
            and abs(res.q * xi - res.a) <= 1.0 / rt
            and abs(res.q * eta - res.b) <= 1.0 / rt
            and res.invariants_hold()
        )
        if not ok:
            failures += 1
    return SuiteResult("lemma7", cases, failures)


def _psi_config(rng):
    r = 10.0 ** rng.uniform(1.8, 3.0)
    c = rng.uniform(0.55, 0.95)
    x = float((math.ceil(r) + 1) ** 2)
    params = PsiParams(
        N=c * math.sqrt(x),
        x=x,
        k=int(rng.choice([1, 2, 3, 5])),
        Delta=10.0 ** rng.uniform(-1.3, -0.4),
        delta0=0.05,
    )
    return r, params


def parseval_case(r: float, params: PsiParams, rel_tol: float = 1e-6):
    """One direct-vs-Parseval comparison; returns (result, ok, slack)."""
    weights = psi_weights(params)
    res = None
    for s_max in (64, 256, 1024, 4096):
        res = i_r_parseval(r, weights, s_max, direct_tol=1e-11)
        if res.tail_bound <= 0.05 * max(res.direct, 1e-12):
            break
    allowance = res.tail_bound + rel_tol * res.direct + 1e-9
    gap = abs(res.direct - res.parseval)
    coef_sum = float(np.sum(np.abs(weights.series_arrays(r)[1])))
    ok = gap <= allowance and abs(res.a0) <= coef_sum + 1e-12
    return res, ok, allowance - gap


def suite_parseval(seed: int, cases: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures = 0
    lines = []
    for i in range(cases):
        r, params = _psi_config(rng)
        weights = psi_weights(params)
        if not np.any(weights.values[: int(r / 4)]):
            lines.append(f"case {i}: empty weights, redrawn")
            r, params = _psi_config(rng)
            weights = psi_weights(params)
        res, ok, slack = parseval_case(r, params)
        if not ok:
            failures += 1
        if i < 5:
            # mean-value existence extraction at finite scale: the smallest
            # grid value of |series| against the root-mean-square level
            # (reported, not asserted: a finite grid can miss the dips)
            u0 = r * math.sqrt(r)
            grid = np.linspace(u0, u0 + 1.0, 257)
            sq, cf = weights.series_arrays(r)
            gmin = float(np.min(np.abs(kernels.trig_series_batch(grid / math.sqrt(r), sq, cf))))
            rms = math.sqrt(max(res.direct, 0.0) * math.sqrt(r))
            lines.append(
                f"r={res.r:.1f} direct={res.direct:.6e} "
                f"parseval={res.parseval:.6e} tail={res.tail_bound:.2e} "
                f"min|series|={gmin:.3e} rms={rms:.3e}"
            )
    return SuiteResult("parseval", cases, failures, lines)


def stationary_ladder(p: int, n_values=(100, 400, 1600), tol: float = 1e-8):
    """Relative error of the stationary-phase main term along an N-ladder
    with the stationary point pinned at the interval midpoint."""
    rels = []
    for n in n_values:
        u_star = (3 * n + 1) / 2.0
        x = p * u_star * u_star
        spec = OscSpec(m=1, p=p, N=float(n), x=x, phase_sign="plus")
        exact = i_pm(spec, tol=tol)
        main, valid = i_pm_stationary(spec)
        if not valid:
            raise AssertionError("stationary point unexpectedly outside")
        rels.append(abs(exact - main) / abs(main))
    return rels


def suite_stationary(seed: int, cases: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures = 0
    lines = []
    for _ in range(cases):
        p = int(rng.integers(2, 7))
        rels = stationary_ladder(p)
        if not (rels[0] > rels[1] > rels[2]):
            failures += 1
        lines.append(
            "p=%d rel errors: %s" % (p, ", ".join(f"{r:.5f}" for r in rels))
        )
        # far-off-resonance spec: stationary point outside the interval
        n0 = float(rng.integers(50, 200))
        spec = OscSpec(m=1, p=4, N=n0, x=4.0 * (n0 / 2.0) ** 2, phase_sign="plus")
        main, valid = i_pm_stationary(spec)
        if valid or main != 0:
            failures += 1
    return SuiteResult("stationary", cases, failures, lines)


def residual_probe(x_lo: int = 100, x_hi: int = 10**6, points: int = 160):
    """sup |delta(x) - c*S(x, 0)| over a log grid, for c = 1 and c = 2.

    Decides which coefficient on the fractional-part sum keeps the
    hyperbola-count residual bounded.  Returns (sup_c1, sup_c2, xs).
    """
    xs = np.unique(
        np.rint(
            np.logspace(math.log10(x_lo), math.log10(x_hi), points)
        ).astype(np.int64)
    )
    sup1 = 0.0
    sup2 = 0.0
    for x in xs:
        x = int(x)
        es = delta(x)
        s0 = s_sum(x, 0.0)
        sup1 = max(sup1, abs(es.delta - s0))
        sup2 = max(sup2, abs(es.delta - 2.0 * s0))
    return sup1, sup2, xs


def suite_residual(seed: int, cases: int) -> SuiteResult:
    points = max(cases, 40)
    sup1, sup2, xs = residual_probe(points=points)
    bounded = [c for c, s in ((1, sup1), (2, sup2)) if s <= 10.0]
    failures = 0 if len(bounded) == 1 else 1
    lines = [
        f"grid: {len(xs)} points in [{int(xs[0])}, {int(xs[-1])}]",
        f"sup |delta - 1*S| = {sup1:.4f}",
        f"sup |delta - 2*S| = {sup2:.4f}",
        (
            f"bounded residual coefficient: c={bounded[0]}"
            if len(bounded) == 1
            else f"ambiguous: {bounded}"
        ),
    ]
    return SuiteResult("residual", len(xs), failures, lines)


SUITES = {
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma4": suite_lemma4,
    "lemma5": suite_lemma5,
    "lemma7": suite_lemma7,
    "parseval": suite_parseval,
    "stationary": suite_stationary,
    "residual": suite_residual,
}

DEFAULT_CASES = {
    "lemma1": 200,
    "lemma2": 200,
    "lemma4": 500,
    "lemma5": 200,
    "lemma7": 1000,
    "parseval": 12,
    "stationary": 2,
    "residual": 160,
}


def run_suite(name: str, seed: int, cases=None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choices: {sorted(SUITES)}")
    if cases is None:
        cases = DEFAULT_CASES[name]
    return SUITES[name](seed, cases)
