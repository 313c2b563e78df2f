"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 resource cap exceeded, 3 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import _accel
from .algebra import eval_word, parse_word, render_matrix
from .average import (
    average_growth_rate,
    empirical_mean_check,
    expected_entries,
    recurrence_spec,
)
from .errors import InputError, InvariantViolation, MatGrowthError
from .fastest import (
    DEFAULT_CAP,
    candidate_set_rate,
    jsr_lower_bound,
    max_entry_over_length,
    periodicity_probe,
    verify_alternation_optimality,
)
from .girth import bfs_first_collision, freeness_sufficient, girth_bound, verify_relation
from .lyapunov import DEFAULT_N, DEFAULT_TRIALS, bounds_report, lyapunov_mc, shear_parameters
from .registry import REGISTRY, SUMMARY_PAIRS, resolve_pair
from .report import emit_report, render_csv, render_json, run_summary, write_output

log = logging.getLogger("matgrowth")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _global_options(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv"), default=default("json"))
    parser.add_argument("--out", metavar="PATH", default=default(None),
                        help="output file (overwritten); stdout if omitted")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--threads", type=int, default=default(0), help="0 = auto")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False))


def _parse_check(text):
    opts = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or key.strip() not in ("trials", "seed"):
            raise InputError(f"--check expects trials=T,seed=S, got {text!r}")
        opts[key.strip()] = int(value)
    return opts


def build_parser():
    parser = _Parser(prog="matgrowth", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("jsr", "lower/upper bounds on the joint spectral radius")
    p.add_argument("--pair", required=True)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("maximizers", "largest entry over all words of one length")
    p.add_argument("--pair", required=True)
    p.add_argument("--len", type=int, required=True, dest="length")
    p.add_argument("--limit", type=int, default=None, help="max witnesses listed")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("probe-period", "per-length maximizers and detected period")
    p.add_argument("--pair", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("alternation", "exhaustive check that alternating words maximize entries")
    p.add_argument("--k", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--force", action="store_true")

    p = add("candidates", "best rate among A, B, AB, AAB, ABB")
    p.add_argument("--pair", required=True)

    p = add("average", "average growth rate and exact expectations")
    p.add_argument("--pair", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--check", type=_parse_check, default=None, metavar="trials=T,seed=S")

    p = add("lyapunov", "Monte-Carlo Lyapunov exponent")
    p.add_argument("--pair", required=True)
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--norm", choices=("l1", "maxabs"), default="l1")

    p = add("bounds", "Monte-Carlo exponent against the analytic upper bounds")
    p.add_argument("--pair", required=True)
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--non-free", action="store_true", help="declare the pair non-free")

    p = add("girth", "shortest relation mod p by breadth-first search")
    p.add_argument("--pair", required=True)
    p.add_argument("--p", type=int, required=True, dest="modulus")
    p.add_argument("--depth-max", type=int, default=25)

    p = add("verify", "exact check of a relation u(A,B) = v(A,B)")
    p.add_argument("--pair", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)

    p = add("bound", "predicted relation length ceil(log p / log s)")
    p.add_argument("--p", type=int, required=True, dest="modulus")
    p.add_argument("--s", type=float, required=True)

    p = add("summary", "fastest, average and generic growth for several pairs")
    p.add_argument("--pairs", default=",".join(SUMMARY_PAIRS),
                   help=f"comma-separated names (available: {', '.join(REGISTRY)})")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--search-depth", type=int, default=8)
    return parser


def _pair_header(pair):
    return {"pair": pair.label, "A": render_matrix(pair.A), "B": render_matrix(pair.B)}


def _run(args):
    cmd = args.command
    if cmd == "summary":
        pairs = [resolve_pair(name) for name in args.pairs.split(",") if name.strip()]
        rows = run_summary(pairs, args.n, args.trials, args.seed, args.search_depth)
        emit_report(rows, args.format, args.out)
        bad = [f"{r.pair.label}: {v}" for r in rows for v in r.violations]
        if bad:
            raise InvariantViolation("; ".join(bad))
        if any(r.error for r in rows):
            return 1
        return 0

    if cmd == "bound":
        rec = {"p": args.modulus, "s": args.s, "predicted_length": girth_bound(args.modulus, args.s)}
    elif cmd == "alternation":
        rec = verify_alternation_optimality(args.k, args.m, args.n_max, force=args.force).to_dict()
    else:
        pair = resolve_pair(args.pair)
        A, B = pair.A, pair.B
        rec = _pair_header(pair)
        if cmd == "jsr":
            est = jsr_lower_bound(A, B, args.max_len, cap=args.cap, with_upper=True)
            rec.update(est.to_dict())
        elif cmd == "maximizers":
            rec.update(max_entry_over_length(A, B, args.length, cap=args.cap,
                                             witness_limit=args.limit).to_dict())
        elif cmd == "probe-period":
            rec.update(periodicity_probe(A, B, args.max_len, cap=args.cap).to_dict())
        elif cmd == "candidates":
            rec.update(candidate_set_rate(A, B).to_dict())
        elif cmd == "average":
            rec["s_ave"] = average_growth_rate(A, B)
            rec["recurrence"] = recurrence_spec(A, B).to_dict()
            if args.n is not None:
                rec["n"] = args.n
                rec["expected"] = render_matrix(expected_entries(A, B, args.n))
            if args.check is not None:
                opts = {"trials": 10_000, "seed": args.seed, **args.check}
                rec["check"] = empirical_mean_check(A, B, args.n or 20, opts["trials"],
                                                    opts["seed"]).to_dict()
        elif cmd == "lyapunov":
            rec.update(lyapunov_mc(A, B, args.n, args.trials, args.seed, args.norm).to_dict())
        elif cmd == "bounds":
            rec.update(bounds_report(A, B, args.n, args.trials, args.seed,
                                     non_free=args.non_free).to_dict())
        elif cmd == "girth":
            hit = bfs_first_collision(A, B, args.modulus, args.depth_max)
            rec["p"] = args.modulus
            rec["collision"] = None if hit is None else hit.to_dict()
            s = jsr_lower_bound(A, B, min(8, args.depth_max)).lower
            rec["growth_rate_estimate"] = s
            rec["predicted_length"] = girth_bound(args.modulus, s) if s > 1 else None
            km = shear_parameters(A, B)
            rec["freeness_certified"] = bool(km) and freeness_sufficient(*km)
            if not rec["freeness_certified"]:
                rec["note"] = ("semigroup not certified free; the entry-size argument behind "
                               "predicted_length may not apply")
        elif cmd == "verify":
            u, v = parse_word(args.u), parse_word(args.v)
            rec.update({"u": u, "v": v, "len_u": len(u), "len_v": len(v),
                        "u_value": render_matrix(eval_word(u, A, B)),
                        "v_value": render_matrix(eval_word(v, A, B)),
                        "equal": verify_relation(u, v, A, B)})
        else:  # pragma: no cover - argparse restricts choices
            raise InputError(f"unknown command {cmd}")
    text = render_csv([rec]) if args.format == "csv" else render_json(rec)
    write_output(text, args.out)
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.threads < 0:
            raise InputError(f"--threads must be >= 0, got {args.threads}")
        _accel.set_threads(args.threads)
        log.info("kernel backend: %s", _accel.backend_name())
        return _run(args)
    except MatGrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
