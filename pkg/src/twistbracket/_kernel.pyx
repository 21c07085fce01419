# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled state enumeration; same contract as ``_kernel_py.state_histogram``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef struct UF:
    int *parent
    int *size
    int *history
    int top


cdef inline int _find(UF *uf, int x) nogil:
    while uf.parent[x] != x:
        x = uf.parent[x]
    return x


cdef inline int _union(UF *uf, int a, int b) nogil:
    cdef int ra = _find(uf, a)
    cdef int rb = _find(uf, b)
    cdef int t
    if ra == rb:
        return 0
    if uf.size[ra] < uf.size[rb]:
        t = ra
        ra = rb
        rb = t
    uf.parent[rb] = ra
    uf.size[ra] += uf.size[rb]
    uf.history[uf.top] = rb
    uf.top += 1
    return 1


cdef inline void _undo(UF *uf, int n) nogil:
    cdef int rb, ra
    while n > 0:
        uf.top -= 1
        rb = uf.history[uf.top]
        ra = uf.parent[rb]
        uf.size[ra] -= uf.size[rb]
        uf.parent[rb] = rb
        n -= 1


cdef void _walk(UF *uf, int[:, ::1] p0, int[:, ::1] p1, int n_vert, int n_sites,
                int n_edges, long long[:, :, ::1] hist,
                int v, int mask, int n_a, int merged) nogil:
    cdef int k
    if v == n_vert:
        hist[mask, n_a, n_edges - merged] += 1
        return
    k = _union(uf, p0[v, 0], p0[v, 1]) + _union(uf, p0[v, 2], p0[v, 3])
    if v < n_sites:
        _walk(uf, p0, p1, n_vert, n_sites, n_edges, hist, v + 1, mask, n_a, merged + k)
    else:
        _walk(uf, p0, p1, n_vert, n_sites, n_edges, hist, v + 1, mask, n_a + 1, merged + k)
    _undo(uf, k)
    k = _union(uf, p1[v, 0], p1[v, 1]) + _union(uf, p1[v, 2], p1[v, 3])
    if v < n_sites:
        _walk(uf, p0, p1, n_vert, n_sites, n_edges, hist, v + 1, mask | (1 << v), n_a, merged + k)
    else:
        _walk(uf, p0, p1, n_vert, n_sites, n_edges, hist, v + 1, mask, n_a, merged + k)
    _undo(uf, k)


def state_histogram(pairs0, pairs1, int n_edges, int n_sites):
    cdef int[:, ::1] p0 = np.ascontiguousarray(np.asarray(pairs0, dtype=np.intc).reshape(-1, 4))
    cdef int[:, ::1] p1 = np.ascontiguousarray(np.asarray(pairs1, dtype=np.intc).reshape(-1, 4))
    cdef int n_vert = p0.shape[0]
    cdef int n_cross = n_vert - n_sites
    if n_sites > 30:
        raise ValueError("too many open sites")
    out = np.zeros((1 << n_sites, n_cross + 1, n_edges + 1), dtype=np.int64)
    cdef long long[:, :, ::1] hist = out
    cdef int m = n_edges if n_edges > 0 else 1
    parent = np.arange(m, dtype=np.intc)
    size = np.ones(m, dtype=np.intc)
    history = np.zeros(2 * n_vert + 1, dtype=np.intc)
    cdef int[::1] pv = parent
    cdef int[::1] sv = size
    cdef int[::1] hv = history
    cdef UF uf
    uf.parent = &pv[0]
    uf.size = &sv[0]
    uf.history = &hv[0]
    uf.top = 0
    with nogil:
        _walk(&uf, p0, p1, n_vert, n_sites, n_edges, hist, 0, 0, 0, 0)
    return out
