"""Constructive rational approximation, one- and two-dimensional.

approx_1d walks continued-fraction convergents (same guarantee as the
pigeonhole argument, O(log tau) instead of O(tau)).  approx_2d runs the
two-dimensional pigeonhole literally: fractional-part pairs ({k xi}, {k eta})
for k = 0 .. (1+floor(sqrt(tau)))^2 dropped into a (1+floor(sqrt(tau)))^2
grid of cells; the first collision in scan order yields the denominator.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import kernels
from .errors import ResourceLimitError

#: The pigeonhole grid holds ~tau cells; keep it inside a few hundred MB.
TAU_MAX = 10**7


@dataclass(frozen=True)
class SimulApprox:
    """Simultaneous approximation xi ~ a/q, eta ~ b/q.

    Guarantees: q <= (1 + sqrt(tau))^2 and both errors <= 1/(q sqrt(tau)).
    Numerators may be zero (xi = 0 forces a = 0); the fractions need not be
    reduced.
    """

    a: int
    b: int
    q: int
    err_xi: float
    err_eta: float
    tau: float

    def invariants_hold(self) -> bool:
        rt = math.sqrt(self.tau)
        return (
            self.q >= 1
            and self.q <= (1.0 + rt) ** 2
            and self.err_xi <= 1.0 / (self.q * rt)
            and self.err_eta <= 1.0 / (self.q * rt)
        )


def approx_1d(xi, tau: float):
    """(a, q) with q <= tau and |xi - a/q| <= 1/(q tau).

    Takes the last continued-fraction convergent of xi whose denominator
    stays within tau; the follow-up convergent's denominator then exceeds
    tau, which gives the error bound.  Exact for Fraction input.
    """
    if not 0 <= xi < 1:
        raise ValueError(f"xi must lie in [0, 1), got {xi}")
    if tau <= 1:
        raise ValueError(f"tau must exceed 1, got {tau}")
    f = Fraction(xi)
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1  # a0 = floor(xi) = 0
    n, d = f.numerator, f.denominator
    n -= (n // d) * d
    while n != 0:
        a = d // n
        p_next = a * p_cur + p_prev
        q_next = a * q_cur + q_prev
        if q_next > tau:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_next, q_next
        d, n = n, d - a * n
    return p_cur, q_cur


def approx_2d(xi: float, eta: float, tau: float) -> SimulApprox:
    """Simultaneous Dirichlet approximation by the pigeonhole construction.

    Deterministic: k is scanned in increasing order and the first repeated
    cell wins.  Fractional parts within 1e-12 of a cell boundary are snapped
    to the lower cell so the assignment cannot flip between platforms.
    """
    if not 0 <= xi < 1 or not 0 <= eta < 1:
        raise ValueError(f"xi, eta must lie in [0, 1), got ({xi}, {eta})")
    if tau <= 1:
        raise ValueError(f"tau must exceed 1, got {tau}")
    if tau > TAU_MAX:
        raise ResourceLimitError(f"tau={tau} exceeds the grid cap {TAU_MAX}")
    q_cells = 1 + isqrt(int(math.floor(tau)))
    k1, k2 = kernels.pigeonhole_collision(
        float(xi), float(eta), q_cells, q_cells * q_cells
    )
    k1, k2 = int(k1), int(k2)
    if k1 < 0:
        raise AssertionError("pigeonhole scan found no collision")
    q = k2 - k1
    a = abs(math.floor(k2 * xi) - math.floor(k1 * xi))
    b = abs(math.floor(k2 * eta) - math.floor(k1 * eta))
    return SimulApprox(
        a=a,
        b=b,
        q=q,
        err_xi=abs(q * xi - a) / q,
        err_eta=abs(q * eta - b) / q,
        tau=float(tau),
    )
