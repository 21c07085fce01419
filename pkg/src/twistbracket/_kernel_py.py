"""Pure-Python state enumeration; reference for the compiled ``_kernel``.

Depth-first walk over the smoothing choices of every vertex with a
union-find that supports rollback (union by size, no path compression), so
each leaf costs two unions instead of a full rebuild.
"""

from __future__ import annotations

import numpy as np


def state_histogram(pairs0, pairs1, n_edges: int, n_sites: int) -> np.ndarray:
    """Histogram of smoothing states.

    ``pairs0[v] = (a, b, c, d)`` means choice 0 at vertex ``v`` joins edge
    ``a`` with ``b`` and ``c`` with ``d``; likewise ``pairs1``. The first
    ``n_sites`` vertices are twist sites, the rest crossings.

    Returns ``H`` of shape ``(2**n_sites, n_cross + 1, n_edges + 1)`` where
    ``H[m, j, l]`` counts crossing states with ``j`` choice-0 (A) smoothings
    and ``l`` edge components, for site bit pattern ``m`` (site ``i`` is bit
    ``i``).
    """
    p0 = [tuple(int(e) for e in row) for row in pairs0]
    p1 = [tuple(int(e) for e in row) for row in pairs1]
    n_vert = len(p0)
    n_cross = n_vert - n_sites
    hist = np.zeros((1 << n_sites, n_cross + 1, n_edges + 1), dtype=np.int64)
    parent = list(range(n_edges))
    size = [1] * n_edges
    history: list[int] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a: int, b: int) -> int:
        ra, rb = find(a), find(b)
        if ra == rb:
            return 0
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        history.append(rb)
        return 1

    def undo(n: int) -> None:
        for _ in range(n):
            rb = history.pop()
            ra = parent[rb]
            size[ra] -= size[rb]
            parent[rb] = rb

    def walk(v: int, mask: int, n_a: int, merged: int) -> None:
        if v == n_vert:
            hist[mask, n_a, n_edges - merged] += 1
            return
        for bit, rows in ((0, p0), (1, p1)):
            a, b, c, d = rows[v]
            k = union(a, b) + union(c, d)
            if v < n_sites:
                walk(v + 1, mask | (bit << v), n_a, merged + k)
            else:
                walk(v + 1, mask, n_a + (1 - bit), merged + k)
            undo(k)

    walk(0, 0, 0, 0)
    return hist
