"""Independent oracles for the test suite.

Everything here recomputes expected values by a route different from the
implementation under test: literal double loops, linear (no-symmetry)
divisor sums, divisor-marking sieves, blind adaptive Simpson, and
integer-segment Gauss quadrature in the substituted variable.
"""

import math
from fractions import Fraction
from math import isqrt

import numpy as np

# int_0^1 e^{2 pi i u^2} du, frozen from scipy.special.fresnel:
# (C(2) + i S(2)) / 2 after the substitution t = 2u
FRESNEL_01 = 0.24412670303767037 + 0.17170783918184918j


def tau_bruteforce(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def lattice_double_loop(x) -> int:
    """#{(a,b): ab <= x} by literally walking both coordinates."""
    count = 0
    a = 1
    while a <= x:
        b = 1
        while a * b <= x:
            count += 1
            b += 1
        a += 1
    return count


def divisor_sum_linear(x: int) -> int:
    """sum_{a<=x} floor(x/a): O(x), no square-root symmetry anywhere."""
    return sum(x // a for a in range(1, x + 1))


def tau_counts_to(limit: int) -> np.ndarray:
    """tau(0..limit) by plain divisor marking."""
    cnt = np.zeros(limit + 1, dtype=np.int64)
    for a in range(1, limit + 1):
        cnt[a::a] += 1
    return cnt


def d_prefix_to(limit: int) -> np.ndarray:
    """D(0..limit) as the cumulative sum of the marking sieve."""
    return np.cumsum(tau_counts_to(limit))


def d_values_segmented(points) -> dict:
    """D(x) at the given points (<= 1e8-ish) via a block-segmented
    divisor-pair sieve with a running prefix total."""
    pts = sorted(set(int(p) for p in points))
    hi_all = pts[-1]
    block = 1 << 21
    out = {}
    total = 0
    it = iter(pts)
    nxt = next(it, None)
    for lo in range(1, hi_all + 1, block):
        hi = min(lo + block - 1, hi_all)
        counts = np.zeros(hi - lo + 1, dtype=np.int64)
        for a in range(1, isqrt(hi) + 1):
            start = max(a * a, ((lo + a - 1) // a) * a)
            if start > hi:
                continue
            counts[start - lo :: a] += 2
            sq = a * a
            if lo <= sq <= hi:
                counts[sq - lo] -= 1
        cum = np.cumsum(counts) + total
        while nxt is not None and nxt <= hi:
            out[nxt] = int(cum[nxt - lo])
            nxt = next(it, None)
        total = int(cum[-1])
    return out


def adaptive_simpson(f, a, b, tol, max_depth=55):
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


def rho1_window_quad(x: float, delta0: float) -> float:
    """Window average of the sawtooth by blind adaptive Simpson."""
    saw = lambda t: 0.5 - ((x + t) - math.floor(x + t))
    val = adaptive_simpson(saw, -delta0, delta0, tol=1e-14 * max(2 * delta0, 1e-3))
    return val / (2.0 * delta0)


_GL20_NODES, _GL20_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _gauss_pieces(lo: np.ndarray, hi: np.ndarray, xf: float) -> float:
    """sum over pieces of int_lo^hi {y} * xf / y^2 dy; each piece must stay
    inside one integer gap so {y} = y - floor(midpoint)."""
    if len(lo) == 0:
        return 0.0
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    base = np.floor(mid)
    y = mid[:, None] + half[:, None] * _GL20_NODES[None, :]
    vals = (y - base[:, None]) * (xf / (y * y))
    return float(math.fsum((vals @ _GL20_WEIGHTS) * half))


def sigma_quadrature(x, u: float, delta: float, restricted: bool = False) -> float:
    """Window-averaged shifted sum, via the substitution y = x/(a+alpha):

        int_{w1}^{w2} {x/(a+alpha)} d alpha = int_{y2}^{y1} {y} x/y^2 dy,

    whose only discontinuities sit at the integers, so Gauss on the integer
    segments needs no breakpoint knowledge from the implementation."""
    xq = Fraction(x)
    xf = float(xq)
    w1, w2 = u - delta, u + delta
    s = isqrt(xq.numerator // xq.denominator)
    acc = []
    for a in range(1, s + 1):
        y1 = xf / (a + w1)
        y2 = xf / (a + w2)
        inner = np.arange(math.floor(y2) + 1.0, math.ceil(y1) - 0.5)
        if restricted and len(inner) > 0:
            continue
        edges = np.concatenate(([y2], inner, [y1]))
        lo, hi = edges[:-1], edges[1:]
        keep = hi > lo
        frac_part = _gauss_pieces(lo[keep], hi[keep], xf)
        acc.append((w2 - w1) * 0.5 - frac_part)
    return math.fsum(acc) / (2.0 * delta)


def mean_square_two_term(r: float, n1: int, c1: float, n2: int, c2: float) -> float:
    """Closed form of int_r^{r+h} |c1 e(t sqrt n1)/n1^{3/4} +
    c2 e(t sqrt n2)/n2^{3/4}|^2 dt with h = r^{-1/2}."""
    h = r**-0.5
    a1 = c1 / n1**0.75
    a2 = c2 / n2**0.75
    w = math.sqrt(n1) - math.sqrt(n2)
    const = (a1 * a1 + a2 * a2) * h
    osc = (
        2.0
        * a1
        * a2
        * (math.sin(2 * math.pi * w * (r + h)) - math.sin(2 * math.pi * w * r))
        / (2.0 * math.pi * w)
    )
    return const + osc
