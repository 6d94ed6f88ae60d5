"""divlab: a numerical laboratory for the divisor summatory function, its
error term, shifted-hyperbola lattice counts, constructive Diophantine
approximation, oscillatory integrals, and Parseval mean values."""

from .dirichlet_approx import SimulApprox, approx_1d, approx_2d
from .divisors import (
    EULER_GAMMA,
    ErrorSample,
    GammaConst,
    TauTable,
    delta,
    divisor_sum_exact,
    lattice_count,
    load_tau_table,
    main_term,
    main_term_reference,
    save_tau_table,
    tau,
    tau_sieve,
)
from .errors import ResourceLimitError
from .kernels import BACKEND
from .meanvalue import (
    MeanValueResult,
    PsiParams,
    PsiWeights,
    i_r_direct,
    i_r_parseval,
    psi_weights,
    trig_series,
)
from .oscillatory import (
    BoundCheck,
    OscSpec,
    SNParams,
    adaptive_integral,
    check_first_derivative_bound,
    check_second_derivative_bound,
    i_pm,
    i_pm_stationary,
    osc_integral,
    s_n_sum,
)
from .sawtooth import (
    SmoothKernel,
    default_trunc_m,
    fourier_b,
    fourier_g,
    rho,
    rho1,
    rho1_series,
    t_coeff,
)
from .shifts import (
    Breakpoint,
    ShiftQuery,
    breakpoints,
    s_sum,
    shift_search,
    shifted_lattice_rational,
    shifted_lattice_real,
    sigma_smoothed,
)

__version__ = "0.1.0"
