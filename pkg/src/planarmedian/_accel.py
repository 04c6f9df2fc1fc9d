"""Kernel backend selection.

The compiled extension is used when it imports; set PMK_PURE_PYTHON=1 to
force the pure-Python fallback. PMK_THREADS caps the worker count used by
the median triple scan.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels as python

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("PMK_PURE_PYTHON", "") in ("", "0"):
    backend = compiled
    BACKEND = "compiled"
else:
    backend = python
    BACKEND = "python"


def all_pairs_bfs(indptr: np.ndarray, indices: np.ndarray, n: int, impl=None) -> np.ndarray:
    return (impl or backend).all_pairs_bfs(indptr, indices, n)


def thread_count() -> int:
    raw = os.environ.get("PMK_THREADS", "")
    try:
        return max(1, int(raw)) if raw else (os.cpu_count() or 1)
    except ValueError:
        return 1


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    # split [0, n) so each chunk carries roughly the same number of triples
    weights = [(n - i) * (n - i - 1) // 2 for i in range(n)]
    target = sum(weights) / parts if parts else 0
    out, lo, acc = [], 0, 0
    for i, w in enumerate(weights):
        acc += w
        if acc >= target and len(out) < parts - 1:
            out.append((lo, i + 1))
            lo, acc = i + 1, 0
    out.append((lo, n))
    return [c for c in out if c[0] < c[1]]


def first_bad_triple(dist: np.ndarray, impl=None):
    """Lexicographically first index triple without a unique median, or None.

    dist must be a connected distance table. Parallel chunks are merged by
    taking the first chunk (in index order) that reports a triple, so the
    answer does not depend on the thread count.
    """
    impl = impl or backend
    n = dist.shape[0]
    if n < 3:
        return None
    dist = np.ascontiguousarray(dist, dtype=np.int32)
    bits = impl.interval_bitsets(dist)
    threads = thread_count() if impl is compiled else 1
    if threads == 1:
        return impl.scan_triples(dist, bits, 0, n)
    chunks = _chunks(n, threads)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(pool.map(lambda c: impl.scan_triples(dist, bits, c[0], c[1]), chunks))
    for r in results:
        if r is not None:
            return r
    return None
