"""Backend selection for the hot kernels.

DIVLAB_BACKEND=numba   force the numba backend (ImportError if unavailable)
DIVLAB_BACKEND=numpy   force the pure-numpy fallback
DIVLAB_BACKEND=auto    numba if importable, else numpy (default)
"""

import os

_choice = os.environ.get("DIVLAB_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"DIVLAB_BACKEND must be auto, numba, or numpy (got {_choice!r})"
    )

if _choice == "numpy":
    from . import _kernels_numpy as _impl
elif _choice == "numba":
    from . import _kernels_numba as _impl
else:
    try:
        from . import _kernels_numba as _impl
    except ImportError:
        from . import _kernels_numpy as _impl

BACKEND = _impl.BACKEND_NAME

tau_fill = _impl.tau_fill
divisor_summatory = _impl.divisor_summatory
s_sum_int = _impl.s_sum_int
s_sum_real = _impl.s_sum_real
rho1_series_eval = _impl.rho1_series_eval
sn_sum_eval = _impl.sn_sum_eval
trig_series_eval = _impl.trig_series_eval
trig_series_batch = _impl.trig_series_batch
shifted_lattice_real_scan = _impl.shifted_lattice_real_scan
pigeonhole_collision = _impl.pigeonhole_collision
