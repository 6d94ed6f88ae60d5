"""Range scans of the divisor-sum error term with deterministic CSV output.

The grid is partitioned into contiguous chunks; workers compute chunks in
parallel and the writer emits them in chunk order, so the CSV body is
byte-identical whatever the worker count.  Floats are printed at 12
significant digits, integers undecorated.
"""

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .divisors import X_MAX, delta
from .shifts import s_sum


@dataclass(frozen=True)
class ScanConfig:
    x_lo: int
    x_hi: int
    step: object = 1  # positive int, or ("log", points_per_decade)
    theta_exponents: tuple = (0.25, 1.0 / 3.0)
    workers: int = 1
    output_path: str = "-"

    def __post_init__(self):
        if not 1 <= self.x_lo <= self.x_hi:
            raise ValueError(f"need 1 <= x_lo <= x_hi, got [{self.x_lo}, {self.x_hi}]")
        if self.x_hi > X_MAX:
            raise ValueError(f"x_hi={self.x_hi} exceeds exactness cap {X_MAX}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if isinstance(self.step, int):
            if self.step < 1:
                raise ValueError("step must be >= 1")
        else:
            tag, ppd = self.step
            if tag != "log" or int(ppd) < 1:
                raise ValueError(f"bad step spec {self.step!r}")
        object.__setattr__(self, "theta_exponents", tuple(self.theta_exponents))


def parse_step(text: str):
    """'5' -> 5;  'log:120' -> ('log', 120)."""
    if text.startswith("log:"):
        return ("log", int(text[4:]))
    if text == "log":
        return ("log", 40)
    return int(text)


@dataclass(frozen=True)
class ScanRow:
    x: int
    d: int
    main: float
    delta: float
    ratios: tuple  # |delta| / x^theta, in config order
    s_sum0: float
    residual_c1: float
    residual_c2: float


def scan_grid(config: ScanConfig) -> np.ndarray:
    if isinstance(config.step, int):
        return np.arange(config.x_lo, config.x_hi + 1, config.step, dtype=np.int64)
    _, ppd = config.step
    decades = math.log10(config.x_hi / config.x_lo)
    n = int(round(ppd * decades)) + 1
    xs = np.rint(
        np.logspace(math.log10(config.x_lo), math.log10(config.x_hi), n)
    ).astype(np.int64)
    xs = np.clip(xs, config.x_lo, config.x_hi)
    return np.unique(xs)


def compute_row(x: int, thetas) -> ScanRow:
    es = delta(x)
    s0 = s_sum(x, 0.0)
    return ScanRow(
        x=es.x,
        d=es.d,
        main=float(es.main),
        delta=es.delta,
        ratios=tuple(abs(es.delta) / float(x) ** t for t in thetas),
        s_sum0=s0,
        residual_c1=es.delta - s0,
        residual_c2=es.delta - 2.0 * s0,
    )


def _chunk_rows(args):
    xs, thetas = args
    return [compute_row(int(x), thetas) for x in xs]


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def header(config: ScanConfig) -> str:
    cols = ["x", "D", "main", "delta"]
    cols += [f"|delta|/x^{_fmt(t)}" for t in config.theta_exponents]
    cols += ["s_sum0", "residual_c1", "residual_c2"]
    return ",".join(cols)


def format_row(row: ScanRow) -> str:
    parts = [str(row.x), str(row.d), _fmt(row.main), _fmt(row.delta)]
    parts += [_fmt(r) for r in row.ratios]
    parts += [_fmt(row.s_sum0), _fmt(row.residual_c1), _fmt(row.residual_c2)]
    return ",".join(parts)


def decade_maxima(rows, theta_index: int):
    """{decade d: max |delta|/x^theta over rows with x in [10^d, 10^(d+1))}."""
    out = {}
    for row in rows:
        d = len(str(row.x)) - 1
        r = row.ratios[theta_index]
        if d not in out or r > out[d]:
            out[d] = r
    return out


def summary_lines(rows, config: ScanConfig):
    if not rows:
        return []
    lines = []
    for i, theta in enumerate(config.theta_exponents):
        best = max(rows, key=lambda r: r.ratios[i])
        lines.append(
            f"# summary theta={_fmt(theta)}: overall_max={_fmt(best.ratios[i])}"
            f" at x={best.x}"
        )
        for d, v in sorted(decade_maxima(rows, i).items()):
            lines.append(
                f"# summary theta={_fmt(theta)} decade=1e{d}: max={_fmt(v)}"
            )
    return lines


def run_scan(config: ScanConfig):
    """Compute all rows (parallel over contiguous chunks, deterministic)."""
    xs = scan_grid(config)
    thetas = config.theta_exponents
    if config.workers == 1 or len(xs) < 4:
        return _chunk_rows((xs, thetas))
    chunks = np.array_split(xs, config.workers * 4)
    rows = []
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for part in pool.map(_chunk_rows, [(c, thetas) for c in chunks if len(c)]):
            rows.extend(part)
    return rows


def write_csv(rows, config: ScanConfig, stream=None):
    own = False
    if stream is None:
        if config.output_path == "-":
            stream = sys.stdout
        else:
            stream = open(config.output_path, "w", newline="")
            own = True
    try:
        stream.write(header(config) + "\n")
        for row in rows:
            stream.write(format_row(row) + "\n")
        for line in summary_lines(rows, config):
            stream.write(line + "\n")
    finally:
        if own:
            stream.close()
