"""Hot inner loops, numba-compiled.  Mirrors _kernels_numpy exactly;
divlab.kernels picks one of the two at import time (DIVLAB_BACKEND)."""

import math

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def tau_fill(lo, out):
    # out[i] = divisor count of lo+i; marks divisor pairs (a, n/a), a*a <= n
    n = out.shape[0]
    hi = lo + n - 1
    a = np.int64(1)
    while a * a <= hi:
        first = a * a
        m0 = ((lo + a - 1) // a) * a
        if m0 > first:
            first = m0
        m = first
        sq = a * a
        while m <= hi:
            if m == sq:
                out[m - lo] += np.uint32(1)
            else:
                out[m - lo] += np.uint32(2)
            m += a
        a += 1


@njit(cache=True)
def divisor_summatory(x):
    # 2 * sum_{a <= sqrt(x)} floor(x/a) - floor(sqrt(x))^2
    s = np.int64(0)
    a = np.int64(1)
    while a * a <= x:
        s += x // a
        a += 1
    r = a - 1
    return 2 * s - r * r


@njit(cache=True)
def _isqrt_f(x):
    s = np.int64(math.floor(math.sqrt(x)))
    while (s + 1) * (s + 1) <= x:
        s += 1
    while s * s > x:
        s -= 1
    return s


@njit(cache=True)
def s_sum_int(x):
    # sum_{a <= sqrt(x)} (1/2 - {x/a}) with exact per-term fractional parts,
    # Neumaier-compensated accumulation
    total = 0.0
    comp = 0.0
    a = np.int64(1)
    while a * a <= x:
        term = 0.5 - (x % a) / a
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        a += 1
    return total + comp


@njit(cache=True)
def s_sum_real(x, alpha):
    total = 0.0
    comp = 0.0
    s = _isqrt_f(x)
    for a in range(1, s + 1):
        v = x / (a + alpha)
        term = 0.5 - (v - math.floor(v))
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
    return total + comp


@njit(cache=True)
def rho1_series_eval(x, delta0, trunc_m):
    # folded +-m pairs of the mollified-sawtooth Fourier series:
    # sum_{m=1}^{M} sinc(2 pi m delta0) * sin(2 pi m x) / (pi m)
    twopi = 2.0 * math.pi
    total = 0.0
    comp = 0.0
    for m in range(1, trunc_m + 1):
        y = twopi * m * delta0
        term = (math.sin(y) / y) * math.sin(twopi * m * x) / (math.pi * m)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
    return total + comp


@njit(cache=True)
def sn_sum_eval(x, u, a_lo, a_hi, delta0, trunc_m, k, big_delta):
    # sum_{a_lo <= a <= a_hi} sum_{1 <= |m| <= M} t_m^k g_m e(m x/(a+u))
    twopi = 2.0 * math.pi
    acc = 0.0 + 0.0j
    for a in range(a_lo, a_hi + 1):
        base = x / (a + u)
        for m in range(1, trunc_m + 1):
            y = twopi * m * delta0
            c = (math.sin(y) / y) / (twopi * m)  # g_m = -i*c, g_{-m} = +i*c
            z = twopi * m * big_delta
            tm = math.sin(z) / z
            w = tm**k
            th = twopi * m * base
            ct = math.cos(th)
            st = math.sin(th)
            gp = complex(0.0, -w * c)
            gn = complex(0.0, w * c)
            acc += gp * complex(ct, st)
            acc += gn * complex(ct, -st)
    return acc


@njit(cache=True)
def trig_series_eval(t, sqrt_n, coef):
    twopi = 2.0 * math.pi
    re = 0.0
    im = 0.0
    for i in range(sqrt_n.shape[0]):
        th = twopi * t * sqrt_n[i]
        re += coef[i] * math.cos(th)
        im += coef[i] * math.sin(th)
    return complex(re, im)


@njit(cache=True)
def trig_series_batch(ts, sqrt_n, coef):
    out = np.empty(ts.shape[0], np.complex128)
    for j in range(ts.shape[0]):
        out[j] = trig_series_eval(ts[j], sqrt_n, coef)
    return out


@njit(cache=True)
def shifted_lattice_real_scan(x, xi, tol):
    cap = 16
    us = np.empty(cap, np.int64)
    vs = np.empty(cap, np.int64)
    cnt = 0
    for v in range(1, x + 1):
        w = x / v - xi
        u = math.floor(w + 0.5)
        if u >= 1.0 and abs(w - u) <= tol:
            if cnt == cap:
                cap *= 2
                us2 = np.empty(cap, np.int64)
                vs2 = np.empty(cap, np.int64)
                us2[:cnt] = us
                vs2[:cnt] = vs
                us = us2
                vs = vs2
            us[cnt] = np.int64(u)
            vs[cnt] = np.int64(v)
            cnt += 1
    return us[:cnt], vs[:cnt]


@njit(cache=True)
def pigeonhole_collision(xi, eta, q_cells, k_max):
    # first k whose fractional-part cell is already occupied; cells snapped
    # downward when the scaled value sits within 1e-12 (frac units) of a
    # cell boundary, so the assignment is platform independent
    seen = np.full(q_cells * q_cells, -1, np.int64)
    guard = 1e-12 * q_cells
    for k in range(k_max + 1):
        vx = k * xi
        vx = (vx - math.floor(vx)) * q_cells
        cx = int(math.floor(vx))
        if vx - cx < guard:
            cx -= 1
        if cx < 0:
            cx = 0
        vy = k * eta
        vy = (vy - math.floor(vy)) * q_cells
        cy = int(math.floor(vy))
        if vy - cy < guard:
            cy -= 1
        if cy < 0:
            cy = 0
        cell = cx * q_cells + cy
        if seen[cell] >= 0:
            return seen[cell], k
        seen[cell] = k
    return np.int64(-1), np.int64(-1)
