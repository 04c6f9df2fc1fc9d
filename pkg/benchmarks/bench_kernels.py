"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from planarmedian import _accel
from planarmedian.generate import generate_to_size


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _accel.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    impls = {"compiled": _accel.compiled, "python": _accel.python}
    print(f"{'kernel':<18}{'n':>7}{'compiled s':>13}{'python s':>12}{'speedup':>10}")
    for n in args.sizes:
        g = generate_to_size(1, n).graph
        indptr, indices = g.csr
        dist = _accel.all_pairs_bfs(indptr, indices, g.n, impl=_accel.compiled)
        for name in impls.values():
            assert np.array_equal(name.all_pairs_bfs(indptr, indices, g.n), dist)
        rows = {
            "all_pairs_bfs": lambda impl: impl.all_pairs_bfs(indptr, indices, g.n),
            "median_scan": lambda impl: _accel.first_bad_triple(dist, impl=impl),
        }
        for kernel, fn in rows.items():
            t = {k: best_of(lambda impl=impl: fn(impl), args.repeat) for k, impl in impls.items()}
            print(f"{kernel:<18}{g.n:>7}{t['compiled']:>13.4f}{t['python']:>12.4f}{t['python'] / t['compiled']:>9.1f}x")


if __name__ == "__main__":
    main()
