"""Time the compiled sweep kernel against the pure-Python one.

    python3 benchmarks/bench_sweep.py [--repeat 3] [--heavy]

Each case is run once untimed (to fill the Jones-Wenzl cache), then
``--repeat`` times per kernel; the best time is reported.  The two kernels
must return the same polynomial.
"""

from __future__ import annotations

import argparse
import time

from cjtail import corpus
from cjtail.cjp import unreduced_cjp
from cjtail.network import KERNEL, ContractionStats

CASES = [("figure-eight", 3), ("6_2", 3), ("10_154m", 2), ("granny", 3), ("10_154m", 3)]
HEAVY = [("10_154m", 4)]


def best_time(d, n, kernel, repeat):
    best, value, stats = float("inf"), None, None
    for _ in range(repeat):
        stats = ContractionStats()
        t0 = time.perf_counter()
        value = unreduced_cjp(d, n, kernel=kernel, stats=stats)
        best = min(best, time.perf_counter() - t0)
    return best, value, stats


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="add 10_154m at n=4 (about a minute in Python)")
    args = ap.parse_args(argv)
    if KERNEL != "compiled":
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    cases = CASES + (HEAVY if args.heavy else [])
    print(f"{'knot':<14}{'n':>3}{'width':>7}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for name, n in cases:
        d = corpus.get(name)
        unreduced_cjp(d, n)
        tp, vp, stats = best_time(d, n, "python", args.repeat)
        tc, vc, _ = best_time(d, n, "compiled", args.repeat)
        if vp != vc:
            raise SystemExit(f"kernels disagree on {name} n={n}")
        print(f"{name:<14}{n:>3}{stats.max_width:>7}{tp:>11.3f}{tc:>12.3f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
