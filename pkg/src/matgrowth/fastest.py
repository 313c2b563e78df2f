"""Maximal entry growth over positive words: exhaustive search and JSR bounds.

All searches enumerate every word of a given length through the kernels in
:mod:`matgrowth.kernels`, on exact integers after scaling both matrices by
their common denominator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import kernels
from .algebra import (
    Mat2,
    eval_word,
    integer_form,
    lower_shear,
    max_abs_entry,
    spectral_radius,
    upper_shear,
    word_from_index,
)
from .errors import InputError, ResourceCapError

DEFAULT_CAP = 30
RATE_RTOL = 1e-12


@dataclass
class MaximizerRecord:
    length: int
    max_value: Fraction
    witnesses: List[str]
    witness_count: int

    def to_dict(self):
        return {
            "length": self.length,
            "max_value": str(self.max_value),
            "witnesses": list(self.witnesses),
            "witness_count": self.witness_count,
        }


@dataclass
class JsrEstimate:
    lower: float
    lower_witness: str
    search_depth: int
    upper: Optional[float] = None

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_witness": self.lower_witness,
            "search_depth": self.search_depth,
        }


def _check_len(n, cap, what="length"):
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{what} must be a positive integer, got {n!r}")
    if n > cap:
        raise ResourceCapError(f"{what} {n} exceeds the exhaustive-search cap {cap}")


def max_entry_over_length(A: Mat2, B: Mat2, n: int, *, cap: int = DEFAULT_CAP,
                          witness_limit: Optional[int] = None) -> MaximizerRecord:
    """Largest |entry| over all ``2**n`` words of length ``n`` and the words attaining it.

    Witnesses are listed in lexicographic order; ``witness_limit`` truncates the
    list (``witness_count`` always holds the full count).
    """
    _check_len(n, cap)
    (ia, ib), denom = integer_form([A, B])
    best = kernels.stat_max(ia, ib, n, kernels.STAT_MAXABS)
    limit = (1 << n) if witness_limit is None else witness_limit
    hits, count = kernels.stat_hits(ia, ib, n, kernels.STAT_MAXABS, best, limit)
    return MaximizerRecord(
        length=n,
        max_value=Fraction(best, denom**n),
        witnesses=[word_from_index(i, n) for i in hits],
        witness_count=count,
    )


def _best_rate_at(ia, ib, denom, L, det_a, det_b):
    return kernels.rho_max(ia, ib, L, det_a, det_b) ** (1.0 / L) / denom


def jsr_lower_bound(A: Mat2, B: Mat2, max_len: int, *, cap: int = DEFAULT_CAP,
                    with_upper: bool = False) -> JsrEstimate:
    """Best ``rho(w)**(1/|w|)`` over nonempty words with ``|w| <= max_len``.

    The witness is the shortest word attaining the best rate, lexicographically
    least among those; rates within a relative 1e-12 count as ties.
    """
    _check_len(max_len, cap, "max_len")
    (ia, ib), denom = integer_form([A, B])
    det_a = (ia[0] * ia[3] - ia[1] * ia[2])
    det_b = (ib[0] * ib[3] - ib[1] * ib[2])
    rates = [_best_rate_at(ia, ib, denom, L, det_a, det_b) for L in range(1, max_len + 1)]
    best = max(rates)
    cutoff = best * (1.0 - RATE_RTOL)
    L = next(i + 1 for i, r in enumerate(rates) if r >= cutoff)
    threshold = (cutoff * denom) ** L
    hits, _ = kernels.rho_hits(ia, ib, L, det_a, det_b, threshold, 1)
    witness = word_from_index(hits[0], L)
    lower = spectral_radius(eval_word(witness, A, B)) ** (1.0 / L)
    upper = jsr_upper_bound(A, B, max_len, cap=cap) if with_upper else None
    return JsrEstimate(lower=lower, lower_witness=witness, search_depth=max_len, upper=upper)


def jsr_upper_bound(A: Mat2, B: Mat2, n: int, *, cap: int = DEFAULT_CAP) -> float:
    """``(max over length-n words of ||W||_1) ** (1/n)``; never below the JSR."""
    _check_len(n, cap)
    (ia, ib), denom = integer_form([A, B])
    best = kernels.stat_max(ia, ib, n, kernels.STAT_L1)
    return math.exp((math.log(best) - n * math.log(denom)) / n) if best > 0 else 0.0


# ---------------------------------------------------------- alternation check


@dataclass
class AlternationRow:
    n: int
    max_value: Fraction
    alternating_value: Fraction
    ok: bool
    extra_ties: List[str]

    def to_dict(self):
        return {
            "n": self.n,
            "max_value": str(self.max_value),
            "alternating_value": str(self.alternating_value),
            "ok": self.ok,
            "extra_ties": self.extra_ties,
        }


@dataclass
class AlternationReport:
    k: Fraction
    m: Fraction
    n_max: int
    in_scope: bool
    verified: bool
    counterexample: Optional[dict]
    rows: List[AlternationRow] = field(default_factory=list)

    @property
    def label(self):
        return "within theorem scope" if self.in_scope else "outside theorem scope"

    def to_dict(self):
        return {
            "k": str(self.k),
            "m": str(self.m),
            "n_max": self.n_max,
            "scope": self.label,
            "verified": self.verified,
            "counterexample": self.counterexample,
            "rows": [r.to_dict() for r in self.rows],
        }


def alternation_in_scope(k, m) -> bool:
    k, m = Fraction(k), Fraction(m)
    return (k >= 2 and m >= 2) or (k == 1 and m == 1)


def verify_alternation_optimality(k, m, n_max: int, *, force: bool = False,
                                  cap: int = DEFAULT_CAP) -> AlternationReport:
    """Check that ``(A(k)B(m))^(n/2)`` and ``(B(m)A(k))^(n/2)`` maximize the largest entry.

    Every even ``n <= n_max`` is checked exhaustively. Other words that tie with
    the alternating ones are allowed and listed in ``extra_ties``.
    """
    k, m = Fraction(k), Fraction(m)
    if n_max < 2 or n_max % 2:
        raise InputError(f"n_max must be a positive even integer, got {n_max}")
    in_scope = alternation_in_scope(k, m)
    if not in_scope and not force:
        raise InputError(
            f"(k, m) = ({k}, {m}) is outside the proven range (k, m >= 2 or k = m = 1); "
            "pass force=True to explore"
        )
    A, B = upper_shear(k), lower_shear(m)
    rows = []
    counterexample = None
    for n in range(2, n_max + 1, 2):
        rec = max_entry_over_length(A, B, n, cap=cap, witness_limit=64)
        alternating = ("AB" * (n // 2), "BA" * (n // 2))
        values = [max_abs_entry(eval_word(w, A, B)) for w in alternating]
        ok = all(v == rec.max_value for v in values)
        extra = [w for w in rec.witnesses if w not in alternating]
        rows.append(AlternationRow(n, rec.max_value, min(values), ok, extra))
        if not ok and counterexample is None:
            counterexample = {
                "n": n,
                "max_value": str(rec.max_value),
                "alternating_value": str(min(values)),
                "maximizer": rec.witnesses[0],
            }
    return AlternationReport(k, m, n_max, in_scope, counterexample is None, counterexample, rows)


# ---------------------------------------------------------------- periodicity


@dataclass
class PeriodReport:
    maximizers: List[dict]
    period: Optional[int]
    block: Optional[str]
    rate_period: Optional[int] = None
    rate_block: Optional[str] = None

    @property
    def detected(self):
        return self.period is not None

    def message(self):
        if self.detected:
            return None
        if self.rate_period is not None:
            return (f"no entry-level period up to max_len; powers of {self.rate_block} "
                    f"carry the top spectral rate (r={self.rate_period})")
        return "no period detected up to max_len"

    def to_dict(self):
        return {
            "maximizers": self.maximizers,
            "period": self.period,
            "block": self.block,
            "rate_period": self.rate_period,
            "rate_block": self.rate_block,
            "message": self.message(),
        }


MIN_MULTIPLES = 3
RHO_RTOL = 1e-9


def periodicity_probe(A: Mat2, B: Mat2, max_len: int, *, cap: int = DEFAULT_CAP) -> PeriodReport:
    """Per-length maximizers and the smallest period ``r`` with a repeating block.

    ``period``/``block``: smallest ``r`` and lexicographically least ``v`` of
    length ``r`` such that ``v**(n/r)`` attains the largest |entry| (ties
    allowed) at every multiple ``n`` of ``r`` up to ``max_len``.

    ``rate_period``/``rate_block``: the same with the largest spectral radius
    among length-``n`` words in place of the largest entry. Powers of a block can
    carry the top growth rate while a rotation of them has a larger entry at
    every finite length, so the two may differ.

    Either is only reported when ``r`` has at least three multiples in range.
    """
    _check_len(max_len, cap, "max_len")
    (ia, ib), denom = integer_form([A, B])
    det_a = ia[0] * ia[3] - ia[1] * ia[2]
    det_b = ib[0] * ib[3] - ib[1] * ib[2]
    records = {}
    table = []
    for n in range(1, max_len + 1):
        rec = max_entry_over_length(A, B, n, cap=cap)
        records[n] = rec
        table.append({"n": n, "word": rec.witnesses[0], "max_value": str(rec.max_value),
                      "ties": rec.witness_count})

    period = block = None
    for r in range(1, max_len // MIN_MULTIPLES + 1):
        for v in records[r].witnesses:
            if all(max_abs_entry(eval_word(v * (n // r), A, B)) == records[n].max_value
                   for n in range(2 * r, max_len + 1, r)):
                period, block = r, v
                break
        if period:
            break

    max_rho = {}

    def top_rho(n):
        if n not in max_rho:
            max_rho[n] = kernels.rho_max(ia, ib, n, det_a, det_b)
        return max_rho[n]

    rate_period = rate_block = None
    for r in range(1, max_len // MIN_MULTIPLES + 1):
        hits, _ = kernels.rho_hits(ia, ib, r, det_a, det_b, top_rho(r) * (1 - RHO_RTOL), 1 << r)
        for i in hits:
            v = word_from_index(i, r)
            rho_v = spectral_radius(eval_word(v, A, B)) * denom**r
            if all(rho_v ** (n // r) >= top_rho(n) * (1 - RHO_RTOL)
                   for n in range(2 * r, max_len + 1, r)):
                rate_period, rate_block = r, v
                break
        if rate_period:
            break
    return PeriodReport(table, period, block, rate_period, rate_block)


# ------------------------------------------------------------- candidate set

CANDIDATES = ("A", "B", "AB", "AAB", "ABB")


@dataclass
class CandidateResult:
    word: str
    rate: float
    sl2_nonnegative: bool

    def to_dict(self):
        return {"word": self.word, "rate": self.rate, "sl2_nonnegative": self.sl2_nonnegative}


def is_sl2_nonnegative(M: Mat2) -> bool:
    return M.is_integral() and M.det == 1 and M.is_nonnegative()


def candidate_set_rate(A: Mat2, B: Mat2) -> CandidateResult:
    """Best rate among powers of A, B, AB, A^2B and AB^2.

    This set is known to be sufficient for SL2(Z) pairs with nonnegative
    entries; ``sl2_nonnegative`` reports whether the inputs qualify.
    """
    best_word, best_rate = None, -1.0
    for w in CANDIDATES:
        rate = spectral_radius(eval_word(w, A, B)) ** (1.0 / len(w))
        if rate > best_rate * (1.0 + RATE_RTOL):
            best_word, best_rate = w, rate
    return CandidateResult(best_word, best_rate, is_sl2_nonnegative(A) and is_sl2_nonnegative(B))
