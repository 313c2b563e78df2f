"""Average growth: the expected product of uniform random {A, B} factors.

By linearity of expectation the expected product of ``n`` factors is
``M**n`` with ``M = (A + B) / 2``, so every entry-expectation sequence obeys the
two-term recurrence ``x_n = tr(M) x_{n-1} - det(M) x_{n-2}`` (Cayley-Hamilton)
and grows like the spectral radius of ``M``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .algebra import Mat2, integer_form, mat_pow, mean_matrix, spectral_radius
from .errors import InputError, ResourceCapError
from .rng import RNG_ALGORITHM, trial_states

EXPECTATION_CAP = 10_000
EXACT_SAMPLE_CAP = 60


def average_growth_rate(A: Mat2, B: Mat2) -> float:
    return spectral_radius(mean_matrix(A, B))


@dataclass(frozen=True)
class RecurrenceSpec:
    trace: Fraction
    det: Fraction

    def next_term(self, prev1, prev2):
        return self.trace * prev1 - self.det * prev2

    def __str__(self):
        return f"x_n = ({self.trace}) x_(n-1) - ({self.det}) x_(n-2)"

    def to_dict(self):
        return {"trace": str(self.trace), "det": str(self.det), "relation": str(self)}


def recurrence_spec(A: Mat2, B: Mat2) -> RecurrenceSpec:
    M = mean_matrix(A, B)
    return RecurrenceSpec(M.trace, M.det)


def expected_entries(A: Mat2, B: Mat2, n: int, *, cap: int = EXPECTATION_CAP) -> Mat2:
    """Exact expectation of a product of ``n`` independent uniform {A, B} factors."""
    if n < 0:
        raise InputError(f"n must be nonnegative, got {n}")
    if n > cap:
        raise ResourceCapError(f"n = {n} exceeds the expectation cap {cap}")
    return mat_pow(mean_matrix(A, B), n)


def expectation_sequence(A: Mat2, B: Mat2, n_max: int):
    """``[E_0, E_1, ..., E_n_max]`` built step by step (``E_k = M E_{k-1}``)."""
    M = mean_matrix(A, B)
    terms = [Mat2.identity()]
    for _ in range(n_max):
        terms.append(M @ terms[-1])
    return terms


@dataclass
class MeanCheck:
    n: int
    trials: int
    seed: int
    sample_mean: Fraction
    expected: Fraction
    stderr: float
    rel_deviation: float
    z_score: float
    rng_algorithm: str = RNG_ALGORITHM

    def to_dict(self):
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "sample_mean": str(self.sample_mean),
            "expected": str(self.expected),
            "stderr": self.stderr,
            "rel_deviation": self.rel_deviation,
            "z_score": self.z_score,
            "rng_algorithm": self.rng_algorithm,
        }


def empirical_mean_check(A: Mat2, B: Mat2, n: int, trials: int, seed: int) -> MeanCheck:
    """Sample the (1,1) entry of ``trials`` exact random products and compare to its expectation.

    Trial ``t`` draws its letters from its own stream (see :mod:`matgrowth.rng`),
    so the result depends only on ``(A, B, n, trials, seed)``.
    """
    if not 1 <= n <= EXACT_SAMPLE_CAP:
        raise ResourceCapError(f"n must be in [1, {EXACT_SAMPLE_CAP}] for exact sampling, got {n}")
    if trials < 100:
        raise InputError(f"trials must be >= 100, got {trials}")
    (ia, ib), denom = integer_form([A, B])
    letters = kernels.letter_stream(trial_states(seed, trials), n)
    mats = np.array([ia, ib], dtype=object)
    P = mats[letters[:, 0]]
    for j in range(1, n):
        M = mats[letters[:, j]]
        P = np.stack(
            [
                P[:, 0] * M[:, 0] + P[:, 1] * M[:, 2],
                P[:, 0] * M[:, 1] + P[:, 1] * M[:, 3],
                P[:, 2] * M[:, 0] + P[:, 3] * M[:, 2],
                P[:, 2] * M[:, 1] + P[:, 3] * M[:, 3],
            ],
            axis=1,
        )
    samples = [int(x) for x in P[:, 0]]
    scale = denom**n
    total = sum(samples)
    mean = Fraction(total, trials * scale)
    # exact sum of squared deviations, then one float conversion
    ss = Fraction(trials * sum(x * x for x in samples) - total * total, trials * scale * scale)
    var = ss / (trials - 1)
    stderr = math.sqrt(var / trials)
    expected = expected_entries(A, B, n).a
    diff = abs(mean - expected)
    rel = float(diff / abs(expected)) if expected != 0 else float(diff)
    z = float(diff) / stderr if stderr > 0 else (0.0 if diff == 0 else math.inf)
    return MeanCheck(n, trials, seed, mean, expected, stderr, rel, z)
