"""Numba and numpy kernels must agree; both are checked against plain Python oracles."""
import itertools
import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matgrowth import _accel, _kernels_numpy as knp, kernels
from matgrowth.rng import trial_states

backends = [pytest.param(knp, id="numpy")]
if _accel.HAVE_NUMBA:
    from matgrowth import _kernels_numba as knb

    backends.append(pytest.param(knb, id="numba"))

entry = st.integers(-3, 3)
int_pairs = st.tuples(st.tuples(entry, entry, entry, entry), st.tuples(entry, entry, entry, entry))


def _brute(ia, ib, n):
    out = []
    for letters in itertools.product((ia, ib), repeat=n):
        P = (1, 0, 0, 1)
        for M in letters:
            P = (P[0] * M[0] + P[1] * M[2], P[0] * M[1] + P[1] * M[3],
                 P[2] * M[0] + P[3] * M[2], P[2] * M[1] + P[3] * M[3])
        out.append(P)
    return out


def _rho(P):
    t, d = P[0] + P[3], P[0] * P[3] - P[1] * P[2]
    disc = t * t - 4 * d
    return (abs(t) + math.sqrt(disc)) / 2 if disc >= 0 else math.sqrt(d)


@pytest.mark.parametrize("mod", backends)
@pytest.mark.parametrize("stat", [kernels.STAT_MAXABS, kernels.STAT_L1])
@given(pair=int_pairs, n=st.integers(1, 7))
@settings(max_examples=40, deadline=None)
def test_int_stat_scan_matches_brute_force(mod, stat, pair, n):
    ia, ib = pair
    prods = _brute(ia, ib, n)
    vals = [max(map(abs, P)) if stat == kernels.STAT_MAXABS else sum(map(abs, P)) for P in prods]
    best = max(vals)
    A, B = np.array(ia, dtype=np.int64), np.array(ib, dtype=np.int64)
    got_best, _, _ = mod.int_stat_scan(A, B, n, stat, 0, False, 0)
    _, hits, count = mod.int_stat_scan(A, B, n, stat, best, True, 1 << n)
    assert int(got_best) == best
    assert [int(h) for h in hits] == [i for i, v in enumerate(vals) if v == best]
    assert int(count) == len(hits)


@pytest.mark.parametrize("mod", backends)
@given(pair=int_pairs, n=st.integers(1, 7))
@settings(max_examples=40, deadline=None)
def test_rho_scan_matches_brute_force(mod, pair, n):
    ia, ib = pair
    rhos = [_rho(P) for P in _brute(ia, ib, n)]
    A, B = np.array(ia, dtype=np.int64), np.array(ib, dtype=np.int64)
    da, db = ia[0] * ia[3] - ia[1] * ia[2], ib[0] * ib[3] - ib[1] * ib[2]
    best, _, _ = mod.rho_scan(A, B, n, float(da), float(db), 0.0, False, 0)
    assert best == pytest.approx(max(rhos), rel=1e-12, abs=1e-12)


def test_object_path_is_exact():
    # entries of A(10)B(10) products overflow int64 quickly; the dispatcher must go exact
    ia, ib = (1, 10, 0, 1), (1, 0, 10, 1)
    n = 22
    best = kernels.stat_max(ia, ib, n, kernels.STAT_MAXABS)
    # the alternating word is the maximizer; compute it with Python ints
    P = (1, 0, 0, 1)
    for M in [ia, ib] * (n // 2):
        P = (P[0] * M[0] + P[1] * M[2], P[0] * M[1] + P[1] * M[3],
             P[2] * M[0] + P[3] * M[2], P[2] * M[1] + P[3] * M[3])
    assert best == max(P) > 2**63
    hits, count = kernels.stat_hits(ia, ib, n, kernels.STAT_MAXABS, best, 10)
    assert count == 2


@pytest.mark.parametrize("mod", backends)
def test_letter_stream_backends_agree(mod):
    st_ = trial_states(3, 5)
    np.testing.assert_array_equal(mod.letter_stream(st_, 333), knp.letter_stream(st_, 333))


@pytest.mark.parametrize("mod", backends)
@pytest.mark.parametrize("kind", [kernels.NORM_L1, kernels.NORM_MAXABS])
def test_log_norm_sum_against_exact(mod, kind):
    rng = np.random.default_rng(1)
    A, B = np.array([1.0, 2, 0, 1]), np.array([1.0, 0, 2, 1])
    letters = rng.integers(0, 2, 30).astype(np.uint8)
    P = (1, 0, 0, 1)
    for x in letters:
        M = (1, 2, 0, 1) if x == 0 else (1, 0, 2, 1)
        P = (P[0] * M[0] + P[1] * M[2], P[0] * M[1] + P[1] * M[3],
             P[2] * M[0] + P[3] * M[2], P[2] * M[1] + P[3] * M[3])
    exact = math.log(sum(map(abs, P)) if kind == kernels.NORM_L1 else max(map(abs, P)))
    assert mod.log_norm_sum(letters, A, B, kind) == pytest.approx(exact, abs=1e-9)


def test_log_norm_sum_empty():
    assert knp.log_norm_sum(np.zeros(0, dtype=np.uint8), np.eye(2).ravel(),
                            np.eye(2).ravel(), 0) == 0.0


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_lyapunov_sums_backends_agree():
    st_ = trial_states(0, 4)
    A, B = np.array([1.0, 1, 0, 1]), np.array([1.0, 0, 1, 1])
    a = knb.lyapunov_sums(st_, 50_000, A, B, 0)
    b = knp.lyapunov_sums(st_, 50_000, A, B, 0)
    # same product, different association order of the renormalizations
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-7)


def test_numpy_fallback_selected_by_env():
    code = ("from matgrowth import _accel, kernels; "
            "print(_accel.backend_name(), kernels._nb_k is None)")
    env = dict(os.environ, MATGROWTH_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out == ["numpy", "True"]
