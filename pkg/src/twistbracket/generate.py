"""Seeded random diagrams for property tests and verification corpora."""

from __future__ import annotations

import random

from .builders import Box, StrandLayout, braid_closure
from .diagram import MATCHINGS, Vertex, WiringDiagram, _Assembler, orient

__all__ = [
    "random_braid_closure",
    "random_plat",
    "random_wiring_diagram",
    "reidemeister2",
]


def random_wiring_diagram(rng: random.Random, n_vertices: int, n_sites: int) -> WiringDiagram:
    """Configuration-model 4-valent code (not necessarily planar).

    The first ``n_sites`` vertices become twist sites with two distinct
    random matchings; the bracket identities are purely combinatorial, so
    planarity is not needed for them.
    """
    if not 0 <= n_sites <= n_vertices or n_vertices < 1:
        raise ValueError("need 0 <= n_sites <= n_vertices and n_vertices >= 1")
    stubs = list(range(4 * n_vertices))
    rng.shuffle(stubs)
    ports = [[0] * 4 for _ in range(n_vertices)]
    for e in range(2 * n_vertices):
        for s in stubs[2 * e: 2 * e + 2]:
            ports[s // 4][s % 4] = e
    order = list(range(n_vertices))
    rng.shuffle(order)
    site_set = set(order[:n_sites])
    verts = []
    for v in range(n_vertices):
        if v in site_set:
            m0, m1 = rng.sample(MATCHINGS, 2)
            verts.append(Vertex.site(ports[v], m0, m1))
        else:
            verts.append(Vertex.crossing(ports[v]))
    return WiringDiagram(2 * n_vertices, 0, tuple(verts))


def random_braid_closure(rng: random.Random, strands: int, length: int) -> WiringDiagram:
    word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)] if strands > 1 else []
    return braid_closure(strands, word)


def random_plat(rng: random.Random, bridges: int, length: int, n_sites: int = 0) -> WiringDiagram:
    """Random plat on ``2 * bridges`` rows with some boxes turned into sites."""
    rows = 2 * bridges
    boxes = [Box(rng.randrange(rows - 1), rng.choice("hv")) for _ in range(length)]
    for i in rng.sample(range(length), min(n_sites, length)):
        boxes[i] = Box(boxes[i].row, boxes[i].kind, site=True)
    caps = [(2 * i, 2 * i + 1) for i in range(bridges)]
    return StrandLayout(rows, boxes, left=caps, right=caps).build()


def reidemeister2(d: WiringDiagram, e: int, f: int) -> WiringDiagram:
    """Push edge ``e`` across edge ``f``, creating a bigon of two crossings.

    Each edge is cut between its two endpoints; orientation is carried
    along when present.
    """
    if e == f or not (0 <= e < d.edge_count and 0 <= f < d.edge_count):
        raise ValueError("need two distinct edges")
    ends = d.endpoints()
    heads = d.orientation
    asm = _Assembler()
    for vert in d.vertices:
        asm.add(vert.with_ports((0, 0, 0, 0)))
    # first crossing: A-smoothing is the identity; second is its mirror
    c1 = asm.add(Vertex.crossing((0, 0, 0, 0)))  # ports BR, TR, TL, BL
    c2 = asm.add(Vertex.crossing((0, 0, 0, 0)))  # ports BL, BR, TR, TL
    asm.link(("P", c1, 2), ("P", c2, 0))
    asm.link(("P", c1, 1), ("P", c2, 1))
    bottom = {e: ("P", c1, 3), f: ("P", c1, 0)}
    top = {e: ("P", c2, 3), f: ("P", c2, 2)}
    hints = {}
    for g in range(d.edge_count):
        (v1, p1), (v2, p2) = ends[g]
        if g in (e, f):
            asm.link(("P", v1, p1), bottom[g])
            asm.link(top[g], ("P", v2, p2))
        else:
            asm.link(("P", v1, p1), ("P", v2, p2))
    verts, n_edges, loops, labels = asm.build(d.free_loops)
    out = WiringDiagram(n_edges, loops, tuple(verts))
    if heads is None:
        return out
    for g in range(d.edge_count):
        h = tuple(heads[g])
        hints.setdefault(labels[("P",) + h], h)
    return orient(out, hints)
