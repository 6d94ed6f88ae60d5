import cmath
import math
import random

import pytest

import oracles
from divlab import (
    OscSpec,
    ResourceLimitError,
    SNParams,
    check_first_derivative_bound,
    check_second_derivative_bound,
    i_pm,
    i_pm_stationary,
    osc_integral,
    rho1,
    s_n_sum,
)
from divlab.verify import stationary_ladder


def test_constant_phase():
    for c in (0.0, 0.3, 1.7):
        val = osc_integral(lambda u, c=c: c + 0.0 * u, 0.0, 1.0, tol=1e-12)
        assert abs(val - cmath.exp(2j * math.pi * c)) < 1e-11


def test_full_period_is_zero():
    val = osc_integral(lambda u: u, 0.0, 1.0, tol=1e-12)
    assert abs(val) < 1e-11


def test_fresnel_value():
    val = osc_integral(lambda u: u * u, 0.0, 1.0, tol=1e-12)
    assert abs(val - oracles.FRESNEL_01) < 5e-12


def test_osc_integral_validation_and_budget():
    with pytest.raises(ValueError):
        osc_integral(lambda u: u, 1.0, 0.0)
    with pytest.raises(ResourceLimitError):
        osc_integral(lambda u: u * u, 0.0, 1.0, tol=0.0, max_panels=64)


def test_first_derivative_bound_examples():
    chk = check_first_derivative_bound(lambda u: u, 0.0, 1.0, 1.0)
    assert chk.passed and chk.abs_value < 1e-9 and chk.bound == 4.0
    chk = check_first_derivative_bound(lambda u: 3.0 * u, 0.0, 2.0, 3.0)
    assert chk.passed and chk.abs_value < 1e-9  # integer periods
    with pytest.raises(ValueError):
        check_first_derivative_bound(lambda u: u, 0.0, 1.0, 0.0)


def test_second_derivative_bound_examples():
    chk = check_second_derivative_bound(lambda u: u * u, 0.0, 1.0, 2.0)
    assert chk.passed
    assert chk.abs_value == pytest.approx(abs(oracles.FRESNEL_01), abs=1e-10)
    assert chk.bound == pytest.approx(12.0 / math.sqrt(2.0))

    # hyperbola-style phase on [N, 2N+1]: curvature >= 2 m x / (2N+1)^3
    m, x, n = 1, 5.0e4, 30.0
    curv = 2.0 * m * x / (2.0 * n + 1.0) ** 3
    chk = check_second_derivative_bound(
        lambda u: m * x / u, n, 2.0 * n + 1.0, curv
    )
    assert chk.passed

    # scaling lambda*f lifts curvature by lambda, bound falls like 1/sqrt
    for lam in (1.0, 4.0, 16.0):
        chk = check_second_derivative_bound(
            lambda u, lam=lam: lam * u * u, 0.0, 1.0, 2.0 * lam
        )
        assert chk.passed
        assert chk.bound == pytest.approx(12.0 / math.sqrt(2.0 * lam))


def test_osc_spec_validation():
    with pytest.raises(ValueError):
        OscSpec(m=1, p=0, N=10.0, x=100.0, phase_sign="plus")
    with pytest.raises(ValueError):
        OscSpec(m=-1, p=1, N=10.0, x=100.0, phase_sign="plus")
    with pytest.raises(ValueError):
        OscSpec(m=1, p=1, N=10.0, x=100.0, phase_sign="sideways")
    spec = OscSpec(m=2, p=3, N=7.0, x=50.0, phase_sign="minus")
    assert spec.interval == (7.0, 15.0)


def test_i_pm_degenerate_m0():
    # m = 0: plain exponential; for integer p and integer N the interval
    # [N, 2N+1] holds a whole number of periods and the integral vanishes
    spec = OscSpec(m=0, p=3, N=16.0, x=1.0, phase_sign="minus")
    assert abs(i_pm(spec, tol=1e-11)) < 1e-10
    # closed form at non-integer N
    spec = OscSpec(m=0, p=2, N=16.25, x=1.0, phase_sign="minus")
    n, p = 16.25, 2
    closed = (
        cmath.exp(-2j * math.pi * p * (2 * n + 1))
        - cmath.exp(-2j * math.pi * p * n)
    ) / (-2j * math.pi * p)
    assert abs(i_pm(spec, tol=1e-11) - closed) < 1e-9


def test_i_pm_off_resonance_decay():
    # alpha0 = m x / N^2, beta0 = 2 m x / N^2; outside [alpha0, beta0] the
    # first-derivative bound gives |I| <= 4/|p - alpha0| resp. 4/|p - beta0|
    m, n = 1, 50.0
    x = 6.3 * n * n  # alpha0 = 6.3, beta0 = 12.6
    alpha0, beta0 = m * x / n**2, 2 * m * x / n**2
    for p in (1, 2, 3, 4, 5):
        spec = OscSpec(m=m, p=p, N=n, x=x, phase_sign="minus")
        assert abs(p - alpha0) >= 1.0
        assert abs(i_pm(spec, tol=1e-9)) <= 4.0 / abs(p - alpha0) + 1e-6
    for p in (14, 20, 30):
        spec = OscSpec(m=m, p=p, N=n, x=x, phase_sign="minus")
        assert abs(p - beta0) >= 1.0
        assert abs(i_pm(spec, tol=1e-9)) <= 4.0 / abs(p - beta0) + 1e-6


def test_stationary_phase_value_and_validity():
    spec = OscSpec(m=1, p=4, N=100.0, x=4 * 150.5**2, phase_sign="plus")
    main, valid = i_pm_stationary(spec)
    assert valid
    u_star = math.sqrt(spec.m * spec.x / spec.p)
    # phase value at the stationary point is 2 sqrt(m p x)
    assert spec.m * spec.x / u_star + spec.p * u_star == pytest.approx(
        2.0 * math.sqrt(spec.m * spec.p * spec.x), rel=1e-14
    )
    assert abs(main) == pytest.approx(
        (spec.m * spec.x) ** 0.25 * spec.p**-0.75 / math.sqrt(2.0), rel=1e-12
    )
    # stationary point outside the interval
    spec_out = OscSpec(m=1, p=4, N=100.0, x=4 * 50.0**2, phase_sign="plus")
    main_out, valid_out = i_pm_stationary(spec_out)
    assert not valid_out and main_out == 0
    with pytest.raises(ValueError):
        i_pm_stationary(OscSpec(m=1, p=4, N=100.0, x=16.0, phase_sign="minus"))


def test_stationary_relative_error_shrinks():
    rels = stationary_ladder(4, n_values=(100, 400))
    assert rels[0] > rels[1]
    assert rels[1] < 0.03


def test_sn_params_validation():
    with pytest.raises(ValueError):
        SNParams(x=100.0, u=0.0, N=10.0, delta0=0.6, M=10, k=0, Delta=0.1)
    with pytest.raises(ValueError):
        SNParams(x=100.0, u=0.0, N=10.0, delta0=0.1, M=-1, k=0, Delta=0.1)
    with pytest.raises(ValueError):
        SNParams(x=100.0, u=0.0, N=10.0, delta0=0.1, M=10, k=-1, Delta=0.1)
    # omitted truncation picks 16*ceil(1/delta0)
    auto = SNParams(x=100.0, u=0.0, N=10.0, delta0=0.1, k=0, Delta=0.1)
    assert auto.M == 160


def test_sn_sum_converges_to_mollified_sum():
    # k = 0, M large: the double sum approaches sum_a rho1(x/(a+u))
    x, u, n, d0 = 500.7, 0.3, 10.0, 0.1
    params = SNParams(x=x, u=u, N=n, delta0=d0, M=20000, k=0, Delta=0.2)
    val, tail = s_n_sum(params)
    direct = sum(rho1(x / (a + u), d0) for a in range(11, 21))
    assert abs(val.real - direct) <= tail
    assert abs(val.imag) <= 1e-10 * max(abs(val.real), 1e-6)


def test_sn_sum_single_term_is_real():
    params = SNParams(x=37.3, u=0.21, N=0.9, delta0=0.1, M=500, k=1, Delta=0.15)
    val, _ = s_n_sum(params)
    assert abs(val.imag) <= 1e-12 * max(1.0, abs(val.real))


def test_sn_sum_smoothing_suppresses():
    x, u, n = 911.0, 0.4, 12.0
    base, tail0 = s_n_sum(SNParams(x=x, u=u, N=n, delta0=0.05, M=4000, k=0, Delta=0.3))
    smooth, tailk = s_n_sum(
        SNParams(x=x, u=u, N=n, delta0=0.05, M=4000, k=8, Delta=0.3)
    )
    assert abs(smooth) <= abs(base) + tail0 + tailk


def test_sn_sum_empty_block():
    val, tail = s_n_sum(SNParams(x=10.0, u=0.0, N=0.3, delta0=0.1, M=10, k=0, Delta=0.1))
    assert val == 0 and tail == 0.0
