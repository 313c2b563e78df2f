"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py --n 1000000 --trials 16 --scan-len 22
"""
import argparse
import time

import numpy as np

from matgrowth import _accel
from matgrowth import _kernels_numpy as knp
from matgrowth.registry import REGISTRY
from matgrowth.rng import trial_states


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pair", default="a2b2", choices=sorted(REGISTRY))
    ap.add_argument("--n", type=int, default=1_000_000, help="factors per Lyapunov trial")
    ap.add_argument("--trials", type=int, default=16)
    ap.add_argument("--scan-len", type=int, default=22, help="word length for exhaustive scans")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    from matgrowth import _kernels_numba as knb

    pair = REGISTRY[args.pair]
    fa, fb = pair.A.to_float(), pair.B.to_float()
    ia = np.array([int(x) for x in pair.A.entries()], dtype=np.int64)
    ib = np.array([int(x) for x in pair.B.entries()], dtype=np.int64)
    da, db = float(pair.A.det), float(pair.B.det)
    states = trial_states(0, args.trials)

    cases = {
        "lyapunov_sums": lambda m: m.lyapunov_sums(states, args.n, fa, fb, 0),
        "int_stat_scan": lambda m: m.int_stat_scan(ia, ib, args.scan_len, 0, 0, False, 0)[0],
        "rho_scan": lambda m: m.rho_scan(ia, ib, args.scan_len, da, db, 0.0, False, 0)[0],
    }
    # compile outside the timed region
    knb.lyapunov_sums(states[:1], 10, fa, fb, 0)
    knb.int_stat_scan(ia, ib, 4, 0, 0, False, 0)
    knb.rho_scan(ia, ib, 4, da, db, 0.0, False, 0)

    print(f"pair={args.pair} n={args.n} trials={args.trials} scan_len={args.scan_len}")
    print(f"{'kernel':<16}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}  agree")
    for name, fn in cases.items():
        t_nb, r_nb = best_of(lambda: fn(knb), args.repeat)
        t_np, r_np = best_of(lambda: fn(knp), args.repeat)
        agree = np.allclose(r_nb, r_np, rtol=0, atol=1e-6)
        print(f"{name:<16}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}  {agree}")


if __name__ == "__main__":
    main()
