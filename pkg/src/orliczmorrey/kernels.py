"""Dispatch to the numba or numpy kernel implementations.

Both modules stay importable so tests and the benchmark can compare them
directly; the names exported here follow ``ORLICZMORREY_DISABLE_NUMBA``.
"""
from . import _kernels_numpy as numpy_impl
from ._accel import USE_NUMBA, backend_name

if USE_NUMBA:
    from . import _kernels_numba as numba_impl
    _impl = numba_impl
else:
    numba_impl = None
    _impl = numpy_impl

maximal_brute = _impl.maximal_brute
comm_maximal_brute = _impl.comm_maximal_brute
riesz_sum = _impl.riesz_sum
legendre_argmax = _impl.legendre_argmax
ball_sums = _impl.ball_sums
ball_oscillation = _impl.ball_oscillation
sup_log_weighted = _impl.sup_log_weighted

__all__ = [
    "backend_name",
    "numpy_impl",
    "numba_impl",
    "maximal_brute",
    "comm_maximal_brute",
    "riesz_sum",
    "legendre_argmax",
    "ball_sums",
    "ball_oscillation",
    "sup_log_weighted",
]
