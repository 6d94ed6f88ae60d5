"""Pure-numpy twins of the numba kernels.  Same functions, same semantics;
this is the fallback selected by DIVLAB_BACKEND=numpy (or when numba is
missing).  Accuracy-sensitive reductions use math.fsum."""

import math
from math import isqrt

import numpy as np

BACKEND_NAME = "numpy"

_CHUNK = 1 << 20


def tau_fill(lo, out):
    n = out.shape[0]
    hi = lo + n - 1
    for a in range(1, isqrt(hi) + 1):
        first = max(a * a, ((lo + a - 1) // a) * a)
        if first > hi:
            continue
        out[first - lo :: a] += 2
        sq = a * a
        if lo <= sq <= hi:
            out[sq - lo] -= 1


def divisor_summatory(x):
    s = isqrt(x)
    total = 0
    for lo in range(1, s + 1, _CHUNK):
        a = np.arange(lo, min(lo + _CHUNK, s + 1), dtype=np.int64)
        total += int(np.sum(x // a))
    return 2 * total - s * s


def s_sum_int(x):
    s = isqrt(x)
    parts = []
    for lo in range(1, s + 1, _CHUNK):
        a = np.arange(lo, min(lo + _CHUNK, s + 1), dtype=np.int64)
        parts.append(0.5 - (x % a) / a)
    if not parts:
        return 0.0
    return math.fsum(np.concatenate(parts))


def s_sum_real(x, alpha):
    s = isqrt(int(x))
    while (s + 1) * (s + 1) <= x:
        s += 1
    while s * s > x:
        s -= 1
    parts = []
    for lo in range(1, s + 1, _CHUNK):
        a = np.arange(lo, min(lo + _CHUNK, s + 1), dtype=np.float64)
        v = x / (a + alpha)
        parts.append(0.5 - (v - np.floor(v)))
    if not parts:
        return 0.0
    return math.fsum(np.concatenate(parts))


def rho1_series_eval(x, delta0, trunc_m):
    m = np.arange(1, trunc_m + 1, dtype=np.float64)
    y = 2.0 * np.pi * m * delta0
    terms = (np.sin(y) / y) * np.sin(2.0 * np.pi * m * x) / (np.pi * m)
    return math.fsum(terms)


def sn_sum_eval(x, u, a_lo, a_hi, delta0, trunc_m, k, big_delta):
    if a_hi < a_lo:
        return 0.0 + 0.0j
    a = np.arange(a_lo, a_hi + 1, dtype=np.float64)
    m = np.arange(1, trunc_m + 1, dtype=np.float64)
    y = 2.0 * np.pi * m * delta0
    c = (np.sin(y) / y) / (2.0 * np.pi * m)
    z = 2.0 * np.pi * m * big_delta
    w = (np.sin(z) / z) ** k
    g = -1j * c  # g_m for m >= 1
    th = 2.0 * np.pi * np.outer(x / (a + u), m)
    e = np.exp(1j * th)
    col = e.sum(axis=0)
    return complex(np.sum(w * (g * col + np.conj(g) * np.conj(col))))


def trig_series_eval(t, sqrt_n, coef):
    th = 2.0 * np.pi * t * sqrt_n
    return complex(math.fsum(coef * np.cos(th)), math.fsum(coef * np.sin(th)))


def trig_series_batch(ts, sqrt_n, coef):
    th = 2.0 * np.pi * np.outer(ts, sqrt_n)
    return (np.exp(1j * th) * coef).sum(axis=1)


def shifted_lattice_real_scan(x, xi, tol):
    us_all = []
    vs_all = []
    for lo in range(1, x + 1, _CHUNK):
        v = np.arange(lo, min(lo + _CHUNK, x + 1), dtype=np.float64)
        w = x / v - xi
        u = np.floor(w + 0.5)
        mask = (u >= 1.0) & (np.abs(w - u) <= tol)
        us_all.append(u[mask].astype(np.int64))
        vs_all.append(v[mask].astype(np.int64))
    return np.concatenate(us_all), np.concatenate(vs_all)


def _cells(vals, q_cells):
    v = (vals - np.floor(vals)) * q_cells
    c = np.floor(v).astype(np.int64)
    c[v - c < 1e-12 * q_cells] -= 1
    np.maximum(c, 0, out=c)
    return c


def pigeonhole_collision(xi, eta, q_cells, k_max):
    k = np.arange(0, k_max + 1, dtype=np.float64)
    cell = _cells(k * xi, q_cells) * q_cells + _cells(k * eta, q_cells)
    order = np.argsort(cell, kind="stable")  # stable: k ascending inside cell
    same = cell[order][1:] == cell[order][:-1]
    if not same.any():
        return -1, -1
    later = order[1:][same]
    earlier = order[:-1][same]
    i = int(np.argmin(later))
    return int(earlier[i]), int(later[i])
