import os
import subprocess
import sys

import numpy as np

from divlab import delta, load_tau_table, s_sum, tau_sieve
from divlab.cli import main
from divlab.scan import ScanConfig, compute_row, run_scan, scan_grid, write_csv
from divlab.verify import residual_probe


def _run(*argv, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "divlab.cli", *argv],
        capture_output=True,
        text=True,
        env=full_env,
    )


def test_dx_matches_library():
    res = _run("dx", "--x", "100")
    assert res.returncode == 0
    assert "D=482" in res.stdout
    assert "delta=6.03984842088" in res.stdout


def test_dx_usage_error():
    res = _run("dx", "--x", "0")
    assert res.returncode == 2
    res = _run("dx", "--x", str(10**12 + 1))
    assert res.returncode == 2


def test_unknown_suite_usage_error():
    res = _run("verify", "--suite", "lemma99")
    assert res.returncode == 2


def test_verify_suite_pass_exit_codes():
    res = _run("verify", "--suite", "lemma7", "--seed", "3", "--cases", "100")
    assert res.returncode == 0
    assert "100/100 pass" in res.stdout


def test_scan_row_format_lock():
    # bit-stable CSV contract: 12 significant digits, integers undecorated
    from divlab.scan import ScanConfig, compute_row, format_row, header

    cfg = ScanConfig(x_lo=100, x_hi=100, step=1, theta_exponents=(0.25, 1 / 3))
    assert header(cfg) == (
        "x,D,main,delta,|delta|/x^0.25,|delta|/x^0.333333333333,"
        "s_sum0,residual_c1,residual_c2"
    )
    assert format_row(compute_row(100, cfg.theta_exponents)) == (
        "100,482,475.960151579,6.03984842088,1.90996777322,1.30124589605,"
        "3.10317460317,2.93667381771,-0.166500785465"
    )


def test_scan_grid_forms():
    lin = scan_grid(ScanConfig(x_lo=10, x_hi=30, step=5))
    assert lin.tolist() == [10, 15, 20, 25, 30]
    log = scan_grid(ScanConfig(x_lo=100, x_hi=1000, step=("log", 10)))
    assert log[0] == 100 and log[-1] == 1000
    assert len(log) == len(set(log.tolist()))


def test_scan_rows_match_point_command():
    cfg = ScanConfig(x_lo=90, x_hi=110, step=1)
    rows = run_scan(cfg)
    row100 = next(r for r in rows if r.x == 100)
    es = delta(100)
    assert row100.d == es.d == 482
    assert row100.delta == es.delta
    assert row100.s_sum0 == s_sum(100, 0.0)
    assert row100.residual_c1 == es.delta - row100.s_sum0
    assert row100.residual_c2 == es.delta - 2 * row100.s_sum0
    for theta, ratio in zip(cfg.theta_exponents, row100.ratios):
        assert ratio == abs(es.delta) / 100**theta


def test_scan_workers_deterministic(tmp_path):
    f1, f3 = tmp_path / "w1.csv", tmp_path / "w3.csv"
    res = _run("scan", "--lo", "50", "--hi", "220", "--step", "1",
               "--workers", "1", "--out", str(f1))
    assert res.returncode == 0
    res = _run("scan", "--lo", "50", "--hi", "220", "--step", "1",
               "--workers", "3", "--out", str(f3))
    assert res.returncode == 0
    assert f1.read_bytes() == f3.read_bytes()


def test_scan_log_steps_and_summary(tmp_path):
    out = tmp_path / "log.csv"
    res = _run("scan", "--lo", "100", "--hi", "10000", "--step", "log:25",
               "--theta", "0.25", "--out", str(out))
    assert res.returncode == 0
    text = out.read_text().splitlines()
    assert text[0].startswith("x,D,main,delta,|delta|/x^0.25")
    assert any(line.startswith("# summary theta=0.25 decade=1e2") for line in text)


def test_scan_empty_rows_header_only(tmp_path):
    cfg = ScanConfig(x_lo=5, x_hi=9, step=1, output_path=str(tmp_path / "e.csv"))
    write_csv([], cfg)
    lines = (tmp_path / "e.csv").read_text().splitlines()
    assert len(lines) == 1 and lines[0].startswith("x,D,main,delta")


def test_scan_io_error():
    res = _run("scan", "--lo", "1", "--hi", "5", "--out", "/nonexistent/dir/out.csv")
    assert res.returncode == 3


def test_shift_count_cli():
    res = _run("shift-count", "--x", "6", "--shift", "1/2")
    assert res.returncode == 0
    assert "count=1" in res.stdout and "1 4" in res.stdout
    res = _run("shift-count", "--x", "6", "--shift", "0.5")
    assert "count=1" in res.stdout


def test_shift_search_cli():
    res = _run("shift-search", "--x", "1000", "--theta-max", "0", "--step", "1")
    assert res.returncode == 0
    assert "theta*=0" in res.stdout


def test_residual_probe_cli_and_single_sample():
    res = _run("residual-probe", "--lo", "1000", "--hi", "100000", "--points", "40")
    assert res.returncode == 0
    assert "c=2" in res.stdout
    # single sample: sups equal the scan-row residual columns
    sup1, sup2, xs = residual_probe(1000, 1000, 1)
    row = compute_row(1000, (0.25,))
    assert sup1 == abs(row.residual_c1)
    assert sup2 == abs(row.residual_c2)
    # impossible bound: no unique coefficient -> verification failure exit
    res = _run("residual-probe", "--lo", "1000", "--hi", "2000", "--points", "5",
               "--bound", "1e-9")
    assert res.returncode == 1


def test_approx2d_and_oscint_and_meanvalue_cli():
    res = _run("approx2d", "--xi", "0.5", "--eta", "0.25", "--tau", "50")
    assert res.returncode == 0 and "invariants=ok" in res.stdout
    res = _run("oscint", "--m", "1", "--p", "4", "--N", "50",
               "--x", str(4 * 75.5**2), "--phase-sign", "plus", "--tol", "1e-8")
    assert res.returncode == 0 and "stationary main" in res.stdout
    res = _run("meanvalue", "--r", "100", "--x", "10609", "--N", "77.25",
               "--k", "2", "--Delta", "0.1", "--s-max", "512")
    assert res.returncode == 0 and "parseval=" in res.stdout


def test_cache_cli_roundtrip(tmp_path):
    res = _run("cache", "build", "--lo", "10", "--hi", "500",
               "--cache-dir", str(tmp_path))
    assert res.returncode == 0
    path = tmp_path / "tau_10_500.tau1"
    assert path.exists()
    table = load_tau_table(path)
    assert np.array_equal(table.values, tau_sieve(10, 500).values)
    res = _run("cache", "info", "--file", str(path))
    assert res.returncode == 0 and "lo=10" in res.stdout
    res = _run("cache", "verify", "--file", str(path))
    assert res.returncode == 0 and "ok" in res.stdout
    # environment variable supplies the directory when the flag is absent
    res = _run("cache", "build", "--lo", "1", "--hi", "64",
               env={"DIVLAB_CACHE_DIR": str(tmp_path)})
    assert res.returncode == 0
    assert (tmp_path / "tau_1_64.tau1").exists()
    res = _run("cache", "build", "--lo", "1")
    assert res.returncode == 2  # missing --hi


def test_main_callable_directly(capsys):
    assert main(["dx", "--x", "10"]) == 0
    assert "D=27" in capsys.readouterr().out
