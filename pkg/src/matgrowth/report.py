"""Summary table of fastest / average / generic growth, and JSON/CSV emission."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .algebra import exact_spectral_radius, mean_matrix, render_matrix
from .average import average_growth_rate
from .errors import MatGrowthError, InputError
from .fastest import jsr_lower_bound
from .lyapunov import DEFAULT_N, DEFAULT_TRIALS, BoundsReport, bounds_report, lyapunov_mc
from .registry import PairSpec

log = logging.getLogger(__name__)

SIG_DIGITS = 12
DEFAULT_SEARCH_DEPTH = 8
CLOSED_FORM_TOL = 1e-9


def fmt_real(x):
    return None if x is None else float(f"{x:.{SIG_DIGITS}g}")


def _csv_real(x):
    return "" if x is None else f"{x:.{SIG_DIGITS}g}"


@dataclass
class GrowthReport:
    pair: PairSpec
    s_max: Optional[float] = None
    s_max_provenance: Optional[str] = None
    s_max_witness: Optional[str] = None
    s_ave: Optional[float] = None
    s_ave_exact: Optional[Fraction] = None
    s_gen: Optional[float] = None
    lambda_: Optional[float] = None
    lambda_stderr: Optional[float] = None
    bounds: Optional[BoundsReport] = None
    error: Optional[str] = None
    violations: List[str] = field(default_factory=list)

    def check_invariants(self):
        v = []
        if self.s_gen is not None:
            if abs(self.lambda_ - math.log(self.s_gen)) > 1e-12:
                v.append("lambda != log(s_gen)")
            if self.s_max is not None and self.s_gen > self.s_max + 1e-6:
                v.append("s_gen > s_max")
            if self.pair.A.is_nonnegative() and self.pair.B.is_nonnegative():
                if self.s_gen > self.s_ave + 3 * self.s_gen * self.lambda_stderr:
                    v.append("s_gen > s_ave for a nonnegative pair")
        self.violations = v
        return v

    def to_dict(self):
        return {
            "pair": self.pair.label,
            "A": render_matrix(self.pair.A),
            "B": render_matrix(self.pair.B),
            "s_max": fmt_real(self.s_max),
            "s_max_provenance": self.s_max_provenance,
            "s_max_witness": self.s_max_witness,
            "s_ave": fmt_real(self.s_ave),
            "s_ave_exact": None if self.s_ave_exact is None else str(self.s_ave_exact),
            "s_gen": fmt_real(self.s_gen),
            "lambda": fmt_real(self.lambda_),
            "lambda_stderr": fmt_real(self.lambda_stderr),
            "bounds": None if self.bounds is None else round_reals(self.bounds.to_dict()),
            "error": self.error,
            "violations": self.violations,
        }


def _same_period(word: str, block: str) -> bool:
    """True if ``word`` is a power of some rotation of ``block``."""
    if not block or len(word) % len(block):
        return False
    reps = len(word) // len(block)
    return any(word == (block[i:] + block[:i]) * reps for i in range(len(block)))


def _provenance(entry: PairSpec, value: float, witness: str) -> str:
    if (entry.s_max_proven and entry.s_max_known is not None
            and _same_period(witness, entry.s_max_block)
            and abs(value - entry.s_max_known) <= CLOSED_FORM_TOL * entry.s_max_known):
        return "closed-form"
    return "empirical"


def summarize_pair(entry: PairSpec, n=DEFAULT_N, trials=DEFAULT_TRIALS, seed=0,
                   search_depth=DEFAULT_SEARCH_DEPTH, norm="l1") -> GrowthReport:
    row = GrowthReport(entry)
    A, B = entry.A, entry.B
    jsr = jsr_lower_bound(A, B, search_depth)
    row.s_max, row.s_max_witness = jsr.lower, jsr.lower_witness
    row.s_max_provenance = _provenance(entry, jsr.lower, jsr.lower_witness)
    row.s_ave = average_growth_rate(A, B)
    row.s_ave_exact = exact_spectral_radius(mean_matrix(A, B))
    est = lyapunov_mc(A, B, n, trials, seed, norm)
    row.s_gen, row.lambda_, row.lambda_stderr = est.s_gen, est.lambda_mean, est.lambda_stderr
    row.bounds = bounds_report(A, B, estimate=est)
    row.check_invariants()
    return row


def run_summary(pairs, n=DEFAULT_N, trials=DEFAULT_TRIALS, seed=0,
                search_depth=DEFAULT_SEARCH_DEPTH, norm="l1") -> List[GrowthReport]:
    """One :class:`GrowthReport` per pair; a failing row records its error and the rest continue."""
    rows = []
    for entry in pairs:
        try:
            rows.append(summarize_pair(entry, n, trials, seed, search_depth, norm))
        except MatGrowthError as exc:
            log.warning("pair %s failed: %s", entry.label, exc)
            rows.append(GrowthReport(entry, error=f"{type(exc).__name__}: {exc}"))
    return rows


# ------------------------------------------------------------------ emission

CSV_COLUMNS = ("pair", "s_max", "s_ave", "s_gen", "lambda", "s_ave_exact")


def round_reals(obj):
    if isinstance(obj, float):
        return fmt_real(obj) if math.isfinite(obj) else str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: round_reals(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_reals(v) for v in obj]
    return obj


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def render_json(records) -> str:
    return json.dumps(round_reals(records), indent=2) + "\n"


def render_csv(records, columns=None) -> str:
    buf = io.StringIO()
    if columns is None:
        flat = [_flatten(r) for r in records]
        columns = []
        for r in flat:
            columns.extend(k for k in r if k not in columns)
    else:
        flat = records
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in flat:
        writer.writerow(["" if r.get(c) is None else _csv_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, float):
        return _csv_real(v)
    return str(v)


def write_output(text: str, destination=None) -> None:
    """Write to ``destination`` (overwriting) or stdout when it is None or ``-``."""
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {destination}: {exc.strerror}") from exc


def summary_csv_rows(reports):
    return [
        {
            "pair": r.pair.label,
            "s_max": r.s_max,
            "s_ave": r.s_ave,
            "s_gen": r.s_gen,
            "lambda": r.lambda_,
            "s_ave_exact": None if r.s_ave_exact is None else str(r.s_ave_exact),
        }
        for r in reports
    ]


def emit_report(reports, fmt: str = "json", destination=None) -> None:
    if fmt == "json":
        text = render_json([r.to_dict() for r in reports])
    elif fmt == "csv":
        text = render_csv(summary_csv_rows(reports), CSV_COLUMNS)
    else:
        raise InputError(f"unsupported format {fmt!r}")
    write_output(text, destination)
