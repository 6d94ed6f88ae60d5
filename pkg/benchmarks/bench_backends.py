#!/usr/bin/env python3
"""Times the hot kernels on both backends (numba vs pure numpy).

Run:  python benchmarks/bench_backends.py [--repeat 5]

Both kernel modules are imported directly, so this script ignores
DIVLAB_BACKEND and always measures the two implementations side by side.
The numba column excludes compilation (one warmup call per kernel).
"""

import argparse
import time

import numpy as np

from divlab import _kernels_numpy as knp

try:
    from divlab import _kernels_numba as knb
except ImportError:
    knb = None


def times(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def tau_fill_case():
    out = np.zeros(2_000_000, dtype=np.uint32)
    return (10**9, out)


CASES = [
    ("tau_fill window=2e6 @ 1e9", "tau_fill", tau_fill_case),
    ("divisor_summatory(1e12)", "divisor_summatory", lambda: (10**12,)),
    ("s_sum_int(1e12)", "s_sum_int", lambda: (10**12,)),
    ("s_sum_real(1e10, 0.37)", "s_sum_real", lambda: (1.0e10, 0.37)),
    ("rho1_series M=2e5", "rho1_series_eval", lambda: (0.37, 0.05, 200_000)),
    (
        "sn_sum N=500 M=512",
        "sn_sum_eval",
        lambda: (12345.6, 0.3, 501, 1000, 0.05, 512, 2, 0.1),
    ),
    (
        "trig_series_batch 512x2500",
        "trig_series_batch",
        lambda: (
            np.linspace(100.0, 101.0, 512),
            np.sqrt(np.arange(1, 2501, dtype=np.float64)),
            1.0 / np.arange(1, 2501, dtype=np.float64) ** 0.75,
        ),
    ),
    (
        "shifted_lattice_real x=3e6",
        "shifted_lattice_real_scan",
        lambda: (3_000_000, 0.25, 1e-9),
    ),
    (
        "pigeonhole Q=1000",
        "pigeonhole_collision",
        lambda: (0.7548776662, 0.5698402909, 1000, 1_000_000),
    ),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'kernel':38s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for label, name, make in CASES:
        t_np = times(getattr(knp, name), make(), args.repeat)
        if knb is not None:
            fn = getattr(knb, name)
            fn(*make())  # warmup / compile
            t_nb = times(fn, make(), args.repeat)
            print(
                f"{label:38s} {t_np * 1e3:10.2f}ms {t_nb * 1e3:10.2f}ms "
                f"{t_np / t_nb:8.1f}x"
            )
        else:
            print(f"{label:38s} {t_np * 1e3:10.2f}ms {'n/a':>12s}")


if __name__ == "__main__":
    main()
