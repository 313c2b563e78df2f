"""Kernel dispatch between the numba and numpy implementations.

Exhaustive scans run on int64 only when every entry of every product is
provably below 2**62 (the l1 norm is submultiplicative); otherwise they fall
back to numpy object arrays holding Python ints, which are exact at any size.
"""
import numpy as np

from . import _accel
from . import _kernels_numpy as _np_k

if _accel.USE_NUMBA:
    from . import _kernels_numba as _nb_k
else:  # pragma: no cover - exercised under MATGROWTH_DISABLE_NUMBA=1
    _nb_k = None

NORM_L1 = 0
NORM_MAXABS = 1
NORMS = {"l1": NORM_L1, "maxabs": NORM_MAXABS}
STAT_MAXABS = 0
STAT_L1 = 1

INT64_SAFE = 1 << 62


def _int_backend(ia, ib, n):
    bound = max(sum(abs(x) for x in ia), sum(abs(x) for x in ib), 1)
    if bound**n < INT64_SAFE:
        A = np.array(ia, dtype=np.int64)
        B = np.array(ib, dtype=np.int64)
        return (_nb_k or _np_k), A, B
    A = np.array([int(x) for x in ia], dtype=object)
    B = np.array([int(x) for x in ib], dtype=object)
    return _np_k, A, B


def stat_max(ia, ib, n, stat):
    mod, A, B = _int_backend(ia, ib, n)
    best, _, _ = mod.int_stat_scan(A, B, n, stat, 0, False, 0)
    return int(best)


def stat_hits(ia, ib, n, stat, target, limit):
    mod, A, B = _int_backend(ia, ib, n)
    if mod is not _np_k and abs(target) >= INT64_SAFE:
        mod = _np_k
    _, hits, count = mod.int_stat_scan(A, B, n, stat, target, True, limit)
    return [int(i) for i in hits], int(count)


def rho_max(ia, ib, n, det_a, det_b):
    mod, A, B = _int_backend(ia, ib, n)
    best, _, _ = mod.rho_scan(A, B, n, float(det_a), float(det_b), 0.0, False, 0)
    return float(best)


def rho_hits(ia, ib, n, det_a, det_b, threshold, limit):
    mod, A, B = _int_backend(ia, ib, n)
    _, hits, count = mod.rho_scan(A, B, n, float(det_a), float(det_b), threshold, True, limit)
    return [int(i) for i in hits], int(count)


def letter_stream(states, n):
    return (_nb_k or _np_k).letter_stream(states, n)


def log_norm_sum(letters, A, B, norm="l1"):
    return float((_nb_k or _np_k).log_norm_sum(
        np.ascontiguousarray(letters, dtype=np.uint8),
        np.asarray(A, dtype=np.float64), np.asarray(B, dtype=np.float64), NORMS[norm]))


def lyapunov_sums(states, n, A, B, norm="l1"):
    return (_nb_k or _np_k).lyapunov_sums(
        states, n, np.asarray(A, dtype=np.float64), np.asarray(B, dtype=np.float64), NORMS[norm])
