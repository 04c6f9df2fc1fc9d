"""Time recognition plus decomposition on generated graphs of growing size.

    python benchmarks/bench_scaling.py [--sizes 1000 10000 100000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import gc
import time

from planarmedian import BACKEND
from planarmedian.decompose import decompose, recognize
from planarmedian.generate import generate_to_size


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=70_000)
    args = ap.parse_args()
    print(f"backend: {BACKEND}")
    print(f"{'n':>8}{'m':>9}{'total s':>10}{'ratio':>8}  stages (ms)")
    prev = None
    for n in args.sizes:
        g = generate_to_size(args.seed, n).graph
        best, stages = float("inf"), {}
        for _ in range(args.repeat):
            gc.collect()
            t = time.perf_counter()
            rec = recognize(g)
            decompose(g, recognition=rec)
            total = time.perf_counter() - t
            if total < best:
                best = total
                stages = dict(rec.timings)
        ratio = f"{best / prev:.1f}" if prev else "-"
        detail = " ".join(f"{k}={v:.0f}" for k, v in stages.items())
        print(f"{g.n:>8}{g.m:>9}{best:>10.2f}{ratio:>8}  {detail}")
        prev = best


if __name__ == "__main__":
    main()
