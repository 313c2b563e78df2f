"""Generic growth rate: Monte-Carlo Lyapunov exponent and its upper bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import _accel, kernels
from .algebra import Mat2, l1_norm, max_abs_entry
from .average import average_growth_rate
from .errors import DomainError, InputError, NonFiniteError, SingularInputError
from .rng import RNG_ALGORITHM, trial_states

DEFAULT_N = 1_000_000
DEFAULT_TRIALS = 16
ST_CONSTANT = 1.0157
# the first n // BURN_IN_DIVISOR steps are discarded; see lyapunov_mc
BURN_IN_DIVISOR = 10


@dataclass
class LyapunovEstimate:
    lambda_mean: float
    lambda_stderr: float
    s_gen: float
    n: int
    trials: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    norm: str = "l1"
    burn_in: int = 0
    backend: str = field(default_factory=_accel.backend_name)
    per_trial: List[float] = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "lambda_mean": self.lambda_mean,
            "lambda_stderr": self.lambda_stderr,
            "s_gen": self.s_gen,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
            "norm": self.norm,
            "burn_in": self.burn_in,
            "backend": self.backend,
        }


def _check_norm(norm):
    if norm not in kernels.NORMS:
        raise InputError(f"unknown norm {norm!r}; expected one of {sorted(kernels.NORMS)}")


def renormalized_log_norm(word: str, A: Mat2, B: Mat2, norm: str = "l1") -> float:
    """``log ||w(A, B)||`` via the floating-point renormalizing kernel."""
    _check_norm(norm)
    letters = np.frombuffer(word.translate(str.maketrans("AB", "\x00\x01")).encode(), dtype=np.uint8)
    return kernels.log_norm_sum(letters, A.to_float(), B.to_float(), norm)


def exact_log_norm(M: Mat2, norm: str = "l1") -> float:
    value = l1_norm(M) if norm == "l1" else max_abs_entry(M)
    # log of a big Fraction without float overflow
    return math.log(value.numerator) - math.log(value.denominator)


def lyapunov_mc(A: Mat2, B: Mat2, n: int = DEFAULT_N, trials: int = DEFAULT_TRIALS,
                seed: int = 0, norm: str = "l1") -> LyapunovEstimate:
    """Estimate ``lambda = lim (1/n) log ||M_1 ... M_n||`` for uniform random factors.

    Each trial multiplies ``n`` factors in double precision, dividing the running
    product by its norm after every step and summing the logs of those norms, so
    the partial sum after ``k`` steps is ``S_k = log ||M_1 ... M_k||``. The trial
    estimate is ``(S_n - S_m) / (n - m)`` with ``m = n // 10``: the growth over
    the last ``n - m`` steps. Dropping the first ``m`` steps removes the
    ``O(1/n)`` bias from the starting norm and the initial transient.
    """
    _check_norm(norm)
    if n < 1 or trials < 1:
        raise InputError(f"n and trials must be positive, got n={n}, trials={trials}")
    if A.det == 0 or B.det == 0:
        raise SingularInputError("both matrices must be nonsingular")
    states = trial_states(seed, trials)
    fa, fb = A.to_float(), B.to_float()
    sums = kernels.lyapunov_sums(states, n, fa, fb, norm)
    burn = n // BURN_IN_DIVISOR
    # letter streams are prefix-consistent, so this is S_m of the same products
    head = kernels.lyapunov_sums(states, burn, fa, fb, norm) if burn else np.zeros(trials)
    if not (np.all(np.isfinite(sums)) and np.all(np.isfinite(head))):
        raise NonFiniteError("renormalized product hit a zero or non-finite norm")
    per_trial = [(float(s) - float(h)) / (n - burn) for s, h in zip(sums, head)]
    mean = math.fsum(per_trial) / trials
    if trials > 1:
        var = math.fsum((x - mean) ** 2 for x in per_trial) / (trials - 1)
        stderr = math.sqrt(var / trials)
    else:
        stderr = 0.0
    return LyapunovEstimate(mean, stderr, math.exp(mean), n, trials, seed, norm=norm,
                            burn_in=burn, per_trial=per_trial)


def ave_upper_bound(A: Mat2, B: Mat2) -> float:
    """``log s_ave``; an upper bound on the Lyapunov exponent for nonnegative pairs."""
    if not (A.is_nonnegative() and B.is_nonnegative()):
        raise DomainError("the average-growth bound needs matrices with nonnegative entries")
    return math.log(average_growth_rate(A, B))


def sturman_thiffeault_bound(k: float, m: float) -> float:
    """Upper bound on the Lyapunov exponent of the shear pair (A(k), B(m)), ``k*m > 0``."""
    km = float(k) * float(m)
    if not km > 0:
        raise DomainError(f"k*m must be positive, got {km}")
    r = math.sqrt(km)
    return 0.25 * (ST_CONSTANT + math.log(r + 1.0 / r) + 0.5 * math.log1p(km))


def shear_parameters(A: Mat2, B: Mat2):
    """``(k, m)`` if ``A == A(k)`` and ``B == B(m)``, else None."""
    if (A.a, A.c, A.d) == (1, 0, 1) and (B.a, B.b, B.d) == (1, 0, 1):
        return A.b, B.c
    return None


@dataclass
class BoundsReport:
    lambda_mc: float
    lambda_stderr: float
    s_gen: float
    s_ave: float
    ave_bound: Optional[float]
    st_bound: Optional[float]
    nonnegative: bool
    shear_pair: bool
    tighter: Optional[str]
    s_gen_exceeds_s_ave: bool
    bound_respected: Optional[bool]
    warnings: List[str] = field(default_factory=list)
    estimate: Optional[LyapunovEstimate] = field(default=None, repr=False)

    def to_dict(self):
        return {
            "lambda_mc": self.lambda_mc,
            "lambda_stderr": self.lambda_stderr,
            "s_gen": self.s_gen,
            "s_ave": self.s_ave,
            "ave_bound": self.ave_bound,
            "st_bound": self.st_bound,
            "applicable": {"nonnegative": self.nonnegative, "shear_pair": self.shear_pair},
            "tighter": self.tighter,
            "s_gen_exceeds_s_ave": self.s_gen_exceeds_s_ave,
            "bound_respected": self.bound_respected,
            "warnings": self.warnings,
        }


def bounds_report(A: Mat2, B: Mat2, n: int = DEFAULT_N, trials: int = DEFAULT_TRIALS,
                  seed: int = 0, norm: str = "l1", *, estimate: LyapunovEstimate = None,
                  non_free: bool = False) -> BoundsReport:
    """Run the Monte-Carlo estimate and attach whichever analytic bounds apply.

    The average bound needs nonnegative entries. The shear-pair bound is attached
    only for ``(A(k), B(m))`` with ``k, m > 0``.
    """
    est = estimate or lyapunov_mc(A, B, n, trials, seed, norm)
    nonneg = A.is_nonnegative() and B.is_nonnegative()
    ave = ave_upper_bound(A, B) if nonneg else None
    km = shear_parameters(A, B)
    shear = km is not None and km[0] > 0 and km[1] > 0
    st = sturman_thiffeault_bound(*km) if shear else None
    tighter = None
    if ave is not None and st is not None:
        tighter = "ave" if ave < st else "st"
    s_ave = average_growth_rate(A, B)
    warnings = []
    if non_free:
        warnings.append(
            "pair declared non-free: distinct words may give equal products, so the "
            "length normalization in the exponent's definition is ambiguous"
        )
    respected = None
    if ave is not None:
        respected = est.lambda_mean <= ave + 3 * est.lambda_stderr
    return BoundsReport(
        lambda_mc=est.lambda_mean,
        lambda_stderr=est.lambda_stderr,
        s_gen=est.s_gen,
        s_ave=s_ave,
        ave_bound=ave,
        st_bound=st,
        nonnegative=nonneg,
        shear_pair=shear,
        tighter=tighter,
        s_gen_exceeds_s_ave=est.s_gen > s_ave,
        bound_respected=respected,
        warnings=warnings,
        estimate=est,
    )
