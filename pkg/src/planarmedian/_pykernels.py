"""Pure-Python kernels; same signatures as the compiled extension."""

from __future__ import annotations

import numpy as np


def all_pairs_bfs(indptr: np.ndarray, indices: np.ndarray, n: int) -> np.ndarray:
    """Hop distances from every vertex of a CSR graph; -1 marks unreachable pairs."""
    ptr = indptr.tolist()
    nbr = indices.tolist()
    out = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = [s]
        for v in queue:
            dv = dist[v] + 1
            for k in range(ptr[v], ptr[v + 1]):
                w = nbr[k]
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
        out[s] = dist
    return out


def interval_bitsets(dist: np.ndarray) -> list[list[int]]:
    """I[i][j] has bit x set iff x lies on a shortest i-j path (connected input)."""
    n = dist.shape[0]
    out = []
    for i in range(n):
        hit = (dist[i][None, :] + dist) == dist[i][:, None]
        packed = np.packbits(hit, axis=1, bitorder="little")
        out.append([int.from_bytes(row.tobytes(), "little") for row in packed])
    return out


def scan_triples(dist: np.ndarray, bits: list[list[int]], lo: int, hi: int):
    """First triple i<j<k (lexicographic, lo <= i < hi) whose median set is not a singleton.

    Returns (i, j, k, size) or None.
    """
    n = dist.shape[0]
    for i in range(lo, hi):
        bi = bits[i]
        for j in range(i + 1, n):
            a = bi[j]
            bj = bits[j]
            for k in range(j + 1, n):
                c = (a & bj[k] & bi[k]).bit_count()
                if c != 1:
                    return i, j, k, c
    return None
