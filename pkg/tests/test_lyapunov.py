import math
from fractions import Fraction as F

import numpy as np
import pytest

from matgrowth.algebra import Mat2, eval_word, lower_shear, upper_shear
from matgrowth.errors import DomainError, InputError, SingularInputError
from matgrowth.lyapunov import (
    ave_upper_bound,
    bounds_report,
    exact_log_norm,
    lyapunov_mc,
    renormalized_log_norm,
    shear_parameters,
    sturman_thiffeault_bound,
)
from matgrowth.rng import RNG_ALGORITHM

A1, B1 = upper_shear(1), lower_shear(1)
A2, B2 = upper_shear(2), lower_shear(2)
BM2 = lower_shear(-2)
POLL_U, POLL_V = Mat2(2, 1, 1, 1), Mat2(3, 1, 2, 1)
JM_A, JM_B = Mat2(3, 1, 1, 3), Mat2(5, 2, 2, 5)


def test_pollicott_exponent():
    est = lyapunov_mc(POLL_U, POLL_V, 10**6, 8, 0)
    assert est.lambda_mean == pytest.approx(1.143, abs=0.01)
    assert est.rng_algorithm == RNG_ALGORITHM
    assert est.s_gen == pytest.approx(math.exp(est.lambda_mean), rel=1e-12)


def test_scalar_growth_is_exact():
    two = Mat2(2, 0, 0, 2)
    est = lyapunov_mc(two, two, 1000, 3, 9)
    assert est.lambda_mean == pytest.approx(math.log(2), abs=1e-12)
    assert est.lambda_stderr == pytest.approx(0, abs=1e-12)


def test_a2bm2_generic_rate():
    est = lyapunov_mc(A2, BM2, 10**6, 16, 0)
    assert est.s_gen == pytest.approx(1.68, abs=0.05)


def test_input_errors():
    with pytest.raises(SingularInputError):
        lyapunov_mc(Mat2(1, 1, 1, 1), B1, 100, 2, 0)
    with pytest.raises(InputError):
        lyapunov_mc(A1, B1, 0, 2, 0)
    with pytest.raises(InputError):
        lyapunov_mc(A1, B1, 100, 2, 0, norm="l2")


def test_determinism():
    a = lyapunov_mc(A2, BM2, 20_000, 4, 123)
    b = lyapunov_mc(A2, BM2, 20_000, 4, 123)
    assert a == b
    assert a != lyapunov_mc(A2, BM2, 20_000, 4, 124)


@pytest.mark.parametrize("pair", [(A2, B2), (POLL_U, POLL_V), (A2, BM2)])
def test_renormalized_log_matches_exact(pair):
    rng = np.random.default_rng(2024)
    for n in (1, 5, 17, 40):
        w = "".join(rng.choice(["A", "B"], n))
        for norm in ("l1", "maxabs"):
            exact = exact_log_norm(eval_word(w, *pair), norm)
            assert renormalized_log_norm(w, *pair, norm) == pytest.approx(exact, abs=1e-9)


def test_ave_bound_examples():
    assert ave_upper_bound(A1, B1) == pytest.approx(0.405, abs=5e-4)
    assert ave_upper_bound(A2, B2) == pytest.approx(math.log(2), rel=1e-14)
    assert ave_upper_bound(JM_A, JM_B) == pytest.approx(math.log(5.5), rel=1e-14)
    with pytest.raises(DomainError):
        ave_upper_bound(A2, BM2)


def test_st_bound_examples():
    assert sturman_thiffeault_bound(1, 1) == pytest.approx(0.514, abs=0.002)
    assert sturman_thiffeault_bound(2, 2) == pytest.approx(0.684, abs=0.002)
    k = 10**4
    assert sturman_thiffeault_bound(k, k) / math.log(k) == pytest.approx(0.5, rel=0.10)
    with pytest.raises(DomainError):
        sturman_thiffeault_bound(2, -2)
    with pytest.raises(DomainError):
        sturman_thiffeault_bound(0, 3)


def test_shear_parameters():
    assert shear_parameters(upper_shear(F(3, 2)), lower_shear(-4)) == (F(3, 2), -4)
    assert shear_parameters(POLL_U, POLL_V) is None


def test_bounds_report_examples():
    r = bounds_report(A1, B1, 10**5, 8, 0)
    assert r.ave_bound == pytest.approx(0.4055, abs=1e-4)
    assert r.st_bound == pytest.approx(0.514, abs=0.002)
    assert r.tighter == "ave" and r.bound_respected
    r = bounds_report(A2, B2, 10**5, 8, 0)
    assert r.tighter == "st"
    r = bounds_report(A2, BM2, 10**5, 8, 0)
    assert r.ave_bound is None and r.st_bound is None
    assert not r.nonnegative and not r.shear_pair
    assert r.s_gen_exceeds_s_ave
    d = r.to_dict()
    assert d["applicable"] == {"nonnegative": False, "shear_pair": False}


def test_non_free_warning():
    r = bounds_report(A1, B1, 1000, 2, 0, non_free=True)
    assert r.warnings and "non-free" in r.warnings[0]
    assert math.isfinite(r.lambda_mc)


def _random_nonneg_pairs(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a, b = (Mat2(*map(int, rng.integers(0, 4, 4))) for _ in range(2))
        if a.det != 0 and b.det != 0:
            out.append((a, b))
    return out


@pytest.mark.parametrize("pair", _random_nonneg_pairs(20, 17))
def test_ave_bound_holds(pair):
    est = lyapunov_mc(*pair, 10**5, 16, 1)
    assert est.lambda_mean <= ave_upper_bound(*pair) + 3 * est.lambda_stderr


@pytest.mark.parametrize("pair", [(A1, B1), (A2, BM2), (POLL_U, POLL_V)])
def test_norm_independence(pair):
    a = lyapunov_mc(*pair, 10**5, 16, 5, "l1")
    b = lyapunov_mc(*pair, 10**5, 16, 5, "maxabs")
    assert abs(a.lambda_mean - b.lambda_mean) <= 3 * a.lambda_stderr


@pytest.mark.parametrize("c", [F(3, 2), F(1, 3), F(10)])
def test_scalar_invariance(c):
    a = lyapunov_mc(A2, BM2, 10**5, 16, 8)
    b = lyapunov_mc(A2.scale(c), BM2.scale(c), 10**5, 16, 8)
    assert abs(b.lambda_mean - a.lambda_mean - math.log(c)) <= 3 * a.lambda_stderr
