# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the distance table and the median triple scan."""

import numpy as np

from libc.stdint cimport int32_t, uint64_t
from libc.stdlib cimport free, malloc


cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil


def all_pairs_bfs(const int32_t[::1] indptr, const int32_t[::1] indices, int n):
    out = np.full((n, n), -1, dtype=np.int32)
    if n == 0:
        return out
    cdef int32_t[:, ::1] d = out
    cdef int32_t* queue = <int32_t*> malloc(n * sizeof(int32_t))
    if queue == NULL:
        raise MemoryError()
    cdef int s, head, tail, v, w, k
    cdef int32_t dv
    with nogil:
        for s in range(n):
            d[s, s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                v = queue[head]
                head += 1
                dv = d[s, v] + 1
                for k in range(indptr[v], indptr[v + 1]):
                    w = indices[k]
                    if d[s, w] < 0:
                        d[s, w] = dv
                        queue[tail] = w
                        tail += 1
    free(queue)
    return out


def interval_bitsets(const int32_t[:, ::1] dist):
    """Packed interval sets, shape (n, n, words); bit x of [i, j] set iff x in I(i, j)."""
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t words = (n + 63) // 64
    bits = np.zeros((n, n, max(words, 1)), dtype=np.uint64)
    cdef uint64_t[:, :, ::1] b = bits
    cdef Py_ssize_t i, j, x
    cdef int32_t dij
    with nogil:
        for i in range(n):
            for j in range(i, n):
                dij = dist[i, j]
                for x in range(n):
                    if dist[i, x] + dist[x, j] == dij:
                        b[i, j, x >> 6] |= (<uint64_t> 1) << (x & 63)
                if j != i:
                    for x in range(words):
                        b[j, i, x] = b[i, j, x]
    return bits


def scan_triples(const int32_t[:, ::1] dist, const uint64_t[:, :, ::1] bits, int lo, int hi):
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t words = bits.shape[2]
    cdef Py_ssize_t i, j, k, w
    cdef int c
    cdef int fi = -1, fj = -1, fk = -1, fc = 0
    with nogil:
        for i in range(lo, hi):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    c = 0
                    for w in range(words):
                        c += __builtin_popcountll(bits[i, j, w] & bits[j, k, w] & bits[i, k, w])
                    if c != 1:
                        fi = i
                        fj = j
                        fk = k
                        fc = c
                        break
                if fi >= 0:
                    break
            if fi >= 0:
                break
    if fi < 0:
        return None
    return fi, fj, fk, fc
