"""Wiring diagrams: 4-valent codes with crossings and open twist sites.

Ports of a crossing are listed counterclockwise starting at an under-strand
port, so the under strand occupies ports 0 and 2. The A-smoothing joins
(0,1),(2,3) and the B-smoothing joins (0,3),(1,2).

A twist site stores its two smoothings explicitly as perfect matchings of
its port positions: ``pairing0`` (state bit 0) and ``pairing1`` (bit 1).
Sites are indexed 0..k-1 in vertex order.

Orientation, when present, records for every edge the endpoint
``(vertex, port)`` the edge flows into.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

__all__ = [
    "A_PAIRS",
    "B_PAIRS",
    "DiagramError",
    "Vertex",
    "WiringDiagram",
    "combine_sites",
    "component_count",
    "diagram_stats",
    "insert_twists",
    "orient",
    "parse_diagram",
    "resolve",
    "serialize_diagram",
    "split_site",
]

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))
MATCHINGS = (((0, 1), (2, 3)), ((0, 3), (1, 2)), ((0, 2), (1, 3)))


class DiagramError(ValueError):
    """Malformed or inconsistent diagram data."""


def _norm_matching(m) -> tuple[tuple[int, int], tuple[int, int]]:
    try:
        (p, q), (r, s) = m
    except (TypeError, ValueError):
        raise DiagramError(f"pairing must be two pairs of ports, got {m!r}") from None
    pairs = sorted(tuple(sorted((int(p), int(q)))) for p, q in ((p, q), (r, s)))
    if sorted(pairs[0] + pairs[1]) != [0, 1, 2, 3]:
        raise DiagramError(f"pairing {m!r} is not a perfect matching of ports 0..3")
    return tuple(pairs)  # type: ignore[return-value]


def _partner(matching, p: int) -> int:
    for a, b in matching:
        if a == p:
            return b
        if b == p:
            return a
    raise DiagramError(f"port {p} not in matching")


@dataclass(frozen=True)
class Vertex:
    kind: str
    ports: tuple[int, int, int, int]
    sign: int | None = None
    pairing0: tuple | None = None
    pairing1: tuple | None = None
    tag: str | None = None
    # raw pairings as written, kept for bit-exact serialization
    raw0: tuple | None = field(default=None, compare=False, repr=False)
    raw1: tuple | None = field(default=None, compare=False, repr=False)

    @classmethod
    def crossing(cls, ports: Sequence[int], sign: int | None = None) -> "Vertex":
        return cls("crossing", tuple(ports), sign=sign)

    @classmethod
    def site(cls, ports: Sequence[int], pairing0, pairing1, tag: str | None = None) -> "Vertex":
        r0 = tuple(tuple(p) for p in pairing0)
        r1 = tuple(tuple(p) for p in pairing1)
        return cls("twist_site", tuple(ports), pairing0=_norm_matching(r0),
                   pairing1=_norm_matching(r1), tag=tag, raw0=r0, raw1=r1)

    @property
    def is_site(self) -> bool:
        return self.kind == "twist_site"

    def smoothing(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Port pairs joined by state ``bit`` (A/B for crossings)."""
        if self.is_site:
            return self.pairing1 if bit else self.pairing0
        return B_PAIRS if bit else A_PAIRS

    def through(self, p: int) -> int:
        """Port where the strand entering at ``p`` leaves (sites use pairing0)."""
        if self.is_site:
            return _partner(self.pairing0, p)
        return (p + 2) % 4

    def with_ports(self, ports: Sequence[int]) -> "Vertex":
        return replace(self, ports=tuple(ports))


@dataclass(frozen=True)
class WiringDiagram:
    edge_count: int
    free_loops: int = 0
    vertices: tuple[Vertex, ...] = ()
    orientation: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.orientation is not None:
            object.__setattr__(self, "orientation", tuple(tuple(h) for h in self.orientation))
        self._validate()

    def _validate(self):
        if self.edge_count < 0 or self.free_loops < 0:
            raise DiagramError("edge_count and free_loops must be nonnegative")
        seen = [0] * self.edge_count
        for v, vert in enumerate(self.vertices):
            if vert.kind not in ("crossing", "twist_site"):
                raise DiagramError(f"unknown vertex kind {vert.kind!r}")
            if len(vert.ports) != 4:
                raise DiagramError(f"vertex {v} must have 4 ports")
            for e in vert.ports:
                if not 0 <= e < self.edge_count:
                    raise DiagramError(f"edge label {e} out of range at vertex {v}")
                seen[e] += 1
            if vert.is_site:
                if vert.pairing0 is None or vert.pairing1 is None:
                    raise DiagramError(f"twist site {v} needs pairing0 and pairing1")
                if vert.pairing0 == vert.pairing1:
                    raise DiagramError(f"twist site {v}: pairing0 equals pairing1")
            elif vert.sign not in (None, 1, -1):
                raise DiagramError(f"crossing {v}: sign must be 1, -1 or null")
        bad = [e for e, n in enumerate(seen) if n != 2]
        if bad:
            raise DiagramError(f"edge labels {bad[:5]} do not occur exactly twice")
        if self.orientation is not None:
            self._check_orientation()

    def _check_orientation(self):
        if len(self.orientation) != self.edge_count:
            raise DiagramError("orientation must list one head per edge")
        ends = self.endpoints()
        for e, head in enumerate(self.orientation):
            if tuple(head) not in ends[e]:
                raise DiagramError(f"orientation head {head} is not an endpoint of edge {e}")
        for v, vert in enumerate(self.vertices):
            inn = self.incoming(v)
            for p in range(4):
                if inn[p] == inn[vert.through(p)]:
                    raise DiagramError(f"orientation inconsistent at vertex {v}")
            if vert.kind == "crossing" and vert.sign is not None:
                if vert.sign != self._oriented_sign(v):
                    raise DiagramError(f"crossing {v}: sign contradicts orientation")

    # -- structure --------------------------------------------------------
    def endpoints(self) -> list[list[tuple[int, int]]]:
        ends: list[list[tuple[int, int]]] = [[] for _ in range(self.edge_count)]
        for v, vert in enumerate(self.vertices):
            for p, e in enumerate(vert.ports):
                ends[e].append((v, p))
        return ends

    @property
    def site_vertices(self) -> list[int]:
        return [v for v, x in enumerate(self.vertices) if x.is_site]

    @property
    def crossing_vertices(self) -> list[int]:
        return [v for v, x in enumerate(self.vertices) if not x.is_site]

    @property
    def k(self) -> int:
        return len(self.site_vertices)

    @property
    def n_crossings(self) -> int:
        return len(self.vertices) - self.k

    def incoming(self, v: int) -> list[bool]:
        if self.orientation is None:
            raise DiagramError("diagram has no orientation")
        return [tuple(self.orientation[e]) == (v, p) for p, e in enumerate(self.vertices[v].ports)]

    def _oriented_sign(self, v: int) -> int:
        inn = self.incoming(v)
        # positive iff the A-smoothing is the oriented one
        return 1 if inn[0] != inn[1] else -1

    def crossing_signs(self) -> list[int | None]:
        if self.orientation is not None:
            return [self._oriented_sign(v) for v in self.crossing_vertices]
        return [self.vertices[v].sign for v in self.crossing_vertices]

    def writhe(self) -> int:
        signs = self.crossing_signs()
        if any(s is None for s in signs):
            raise DiagramError("writhe needs an orientation or explicit signs on all crossings")
        return sum(signs)

    def with_signs(self) -> "WiringDiagram":
        """Copy with explicit crossing signs filled in from the orientation."""
        if self.orientation is None:
            return self
        verts = list(self.vertices)
        for v in self.crossing_vertices:
            verts[v] = replace(verts[v], sign=self._oriented_sign(v))
        return replace(self, vertices=tuple(verts))

    def to_dict(self) -> dict:
        verts = []
        for vert in self.vertices:
            if vert.is_site:
                d = {"kind": "twist_site", "ports": list(vert.ports),
                     "pairing0": [list(p) for p in (vert.raw0 or vert.pairing0)],
                     "pairing1": [list(p) for p in (vert.raw1 or vert.pairing1)]}
                if vert.tag is not None:
                    d["orientation"] = vert.tag
            else:
                d = {"kind": "crossing", "ports": list(vert.ports), "sign": vert.sign}
            verts.append(d)
        out = {"edge_count": self.edge_count, "free_loops": self.free_loops}
        if self.orientation is not None:
            out["orientation"] = [list(h) for h in self.orientation]
        out["vertices"] = verts
        return out


def parse_diagram(text: str | dict) -> WiringDiagram:
    """Parse the JSON wiring-diagram schema (string or already-decoded dict)."""
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    if not isinstance(doc, dict):
        raise DiagramError("diagram document must be a JSON object")
    try:
        edge_count = int(doc["edge_count"])
    except (KeyError, TypeError, ValueError):
        raise DiagramError("missing or invalid edge_count") from None
    verts = []
    for i, raw in enumerate(doc.get("vertices", [])):
        kind = raw.get("kind")
        ports = raw.get("ports")
        if not isinstance(ports, list) or len(ports) != 4:
            raise DiagramError(f"vertex {i}: ports must be a list of 4 edge labels")
        if kind == "crossing":
            verts.append(Vertex.crossing(ports, raw.get("sign")))
        elif kind == "twist_site":
            if "pairing0" not in raw or "pairing1" not in raw:
                raise DiagramError(f"vertex {i}: twist site needs pairing0 and pairing1")
            tag = raw.get("orientation")
            if tag not in (None, "vertical", "horizontal"):
                raise DiagramError(f"vertex {i}: orientation tag must be vertical or horizontal")
            verts.append(Vertex.site(ports, raw["pairing0"], raw["pairing1"], tag))
        else:
            raise DiagramError(f"vertex {i}: unknown kind {kind!r}")
    orientation = doc.get("orientation")
    return WiringDiagram(edge_count, int(doc.get("free_loops", 0)), tuple(verts),
                         tuple(tuple(h) for h in orientation) if orientation is not None else None)


def serialize_diagram(d: WiringDiagram) -> str:
    return json.dumps(d.to_dict(), separators=(",", ":"))


# -- smoothing resolution ----------------------------------------------


def _count_components(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def resolve(d: WiringDiagram, s: Sequence[int]) -> int:
    """Loops after smoothing vertex ``v`` by bit ``s[v]`` (vertex order)."""
    if len(s) != len(d.vertices):
        raise DiagramError(f"state has {len(s)} bits for {len(d.vertices)} vertices")
    pairs = []
    for vert, bit in zip(d.vertices, s):
        for p, q in vert.smoothing(int(bit)):
            pairs.append((vert.ports[p], vert.ports[q]))
    return _count_components(d.edge_count, pairs) + d.free_loops


def component_count(d: WiringDiagram) -> int:
    """Strand components, treating each site as contracted by pairing0."""
    pairs = []
    for vert in d.vertices:
        matching = vert.pairing0 if vert.is_site else ((0, 2), (1, 3))
        for p, q in matching:
            pairs.append((vert.ports[p], vert.ports[q]))
    return _count_components(d.edge_count, pairs) + d.free_loops


def diagram_stats(d: WiringDiagram, need_writhe: bool = True) -> tuple[int, int, int | None]:
    """(crossings, components, writhe). Sites count as contracted by pairing0."""
    w = d.writhe() if need_writhe else None
    return d.n_crossings, component_count(d), w


# -- orientation ----------------------------------------------------------


def orient(d: WiringDiagram, hints: dict[int, tuple[int, int]] | None = None) -> WiringDiagram:
    """Orient every strand component by traversal.

    ``hints`` maps edge -> head endpoint; each component takes the direction
    of its smallest hinted edge, otherwise its smallest edge flows toward its
    second endpoint.
    """
    ends = d.endpoints()
    head: list[tuple[int, int] | None] = [None] * d.edge_count
    hints = hints or {}
    order = sorted(hints) + [e for e in range(d.edge_count) if e not in hints]
    for e0 in order:
        if head[e0] is not None:
            continue
        h = tuple(hints[e0]) if e0 in hints else ends[e0][1]
        e, cur = e0, h
        while head[e] is None:
            head[e] = cur
            v, p = cur
            q = d.vertices[v].through(p)
            e = d.vertices[v].ports[q]
            a, b = ends[e]
            cur = b if a == (v, q) else a
    return replace(d, orientation=tuple(head))


# -- twist insertion ----------------------------------------------------------


class _Assembler:
    """Glue port tokens and junction tokens into a labelled diagram."""

    def __init__(self):
        self.vertices: list[Vertex] = []
        self.links: list[tuple] = []

    def add(self, vert: Vertex) -> int:
        self.vertices.append(vert)
        return len(self.vertices) - 1

    def link(self, a, b):
        self.links.append((a, b))

    def build(self, free_loops: int = 0):
        adj: dict = {}
        for a, b in self.links:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        labels: dict = {}
        ends_of: list = []
        for v, vert in enumerate(self.vertices):
            for p in range(4):
                tok = ("P", v, p)
                if tok in labels:
                    continue
                prev, cur = None, tok
                path = [tok]
                while True:
                    rest = list(adj[cur])
                    if prev is not None:
                        rest.remove(prev)
                    prev, cur = cur, rest[0]
                    path.append(cur)
                    if cur[0] == "P":
                        break
                e = len(ends_of)
                ends_of.append((tok, cur))
                for t in path:
                    labels[t] = e
        loops = 0
        seen = set(labels)
        for tok in adj:
            if tok in seen:
                continue
            loops += 1
            stack = [tok]
            while stack:
                t = stack.pop()
                if t in seen:
                    continue
                seen.add(t)
                stack.extend(adj[t])
        verts = [vert.with_ports([labels[("P", v, p)] for p in range(4)])
                 for v, vert in enumerate(self.vertices)]
        return verts, len(ends_of), free_loops + loops, labels


def _chain_frame(vert: Vertex) -> tuple[int, int, int, int]:
    """Port positions (BL, BR, TR, TL): pairing1 = cup/cap, pairing0 = identity."""
    (a, b), _ = vert.pairing1
    return a, b, _partner(vert.pairing0, b), _partner(vert.pairing0, a)


def insert_twists(d: WiringDiagram, n: Sequence[int | None]) -> WiringDiagram:
    """Fill each site with ``n[i]`` half-twists (``None`` leaves it open).

    ``n[i] >= 1`` inserts crossings whose A-smoothing is ``pairing0``,
    ``n[i] <= -1`` their mirrors, and ``n[i] = 0`` contracts by ``pairing0``.
    If ``d`` is oriented, the result is re-oriented by propagating the old
    edge directions.
    """
    sites = d.site_vertices
    if len(n) != len(sites):
        raise DiagramError(f"twist vector has length {len(n)}, diagram has {len(sites)} sites")
    fill = {v: ni for v, ni in zip(sites, n) if ni is not None}
    asm = _Assembler()
    newidx: dict[int, int] = {}

    def junction(v, p):
        return ("J", v, p)

    for v, vert in enumerate(d.vertices):
        if v not in fill:
            newidx[v] = asm.add(vert.with_ports((0, 0, 0, 0)))
            continue
        m = fill[v]
        bl, br, tr, tl = _chain_frame(vert)
        if m == 0:
            for p, q in vert.pairing0:
                asm.link(junction(v, p), junction(v, q))
            continue
        below = (junction(v, bl), junction(v, br))  # (left, right) tokens
        for _ in range(abs(m)):
            # local ports in order BR, TR, TL, BL (A = identity) or BL, BR, TR, TL (mirror)
            c = asm.add(Vertex.crossing((0, 0, 0, 0)))
            pos = {"BR": 0, "TR": 1, "TL": 2, "BL": 3} if m > 0 else {"BL": 0, "BR": 1, "TR": 2, "TL": 3}
            asm.link(below[0], ("P", c, pos["BL"]))
            asm.link(below[1], ("P", c, pos["BR"]))
            below = (("P", c, pos["TL"]), ("P", c, pos["TR"]))
        asm.link(below[0], junction(v, tl))
        asm.link(below[1], junction(v, tr))

    def token(v, p):
        return ("P", newidx[v], p) if v in newidx else junction(v, p)

    ends = d.endpoints()
    for e in range(d.edge_count):
        (v1, p1), (v2, p2) = ends[e]
        asm.link(token(v1, p1), token(v2, p2))
    verts, n_edges, loops, labels = asm.build(d.free_loops)
    out = WiringDiagram(n_edges, loops, tuple(verts))
    if d.orientation is None:
        return out
    new_ends = out.endpoints()
    hints: dict[int, tuple[int, int]] = {}
    for e, head in enumerate(d.orientation):
        head = tuple(head)
        tail = ends[e][0] if ends[e][1] == head else ends[e][1]
        if head[0] in newidx:
            tok = ("P", newidx[head[0]], head[1])
            hints.setdefault(labels[tok], tok[1:])
        elif tail[0] in newidx:
            tok = ("P", newidx[tail[0]], tail[1])
            ne = labels[tok]
            a, b = new_ends[ne]
            hints.setdefault(ne, b if a == tok[1:] else a)
    return orient(out, hints)


# -- regular-isotopy move (iii) -------------------------------------------


def split_site(d: WiringDiagram, i: int) -> WiringDiagram:
    """Replace site ``i`` by two stacked sites ``i`` (lower) and ``i+1`` (upper)."""
    sites = d.site_vertices
    if not 0 <= i < len(sites):
        raise DiagramError(f"no site {i}")
    v = sites[i]
    vert = d.vertices[v]
    (a, b), (c, dd) = vert.pairing1
    E = d.edge_count
    m = {c: E, dd: E + 1}
    lower = list(vert.ports)
    lower[c], lower[dd] = m[c], m[dd]
    upper = list(vert.ports)
    for x in (a, b):
        upper[x] = m[_partner(vert.pairing0, x)]
    verts = list(d.vertices)
    verts[v] = vert.with_ports(lower)
    verts.insert(v + 1, vert.with_ports(upper))
    orientation = None
    if d.orientation is not None:
        inn = d.incoming(v)
        heads = []
        for h in d.orientation:
            w, p = h
            if w > v:
                heads.append((w + 1, p))
            elif w == v and p in (c, dd):
                heads.append((v + 1, p))
            else:
                heads.append((w, p))
        for x in (c, dd):
            ax = _partner(vert.pairing0, x)
            # strand enters at ax and leaves at x when port x is outgoing
            heads.append((v + 1, ax) if not inn[x] else (v, x))
        orientation = tuple(heads)
    return WiringDiagram(E + 2, d.free_loops, tuple(verts), orientation)


def combine_sites(d: WiringDiagram, i: int, j: int | None = None) -> WiringDiagram:
    """Merge adjacent sites ``i`` (lower) and ``j`` (upper, default ``i+1``)."""
    j = i + 1 if j is None else j
    sites = d.site_vertices
    if not (0 <= i < len(sites) and 0 <= j < len(sites)) or i == j:
        raise DiagramError(f"sites {i}, {j} do not exist")
    v, u = sites[i], sites[j]
    lo, up = d.vertices[v], d.vertices[u]
    candidates = []
    for lp in lo.pairing1:
        for upp in up.pairing1:
            edges = sorted(lo.ports[x] for x in lp)
            if edges != sorted(up.ports[x] for x in upp) or edges[0] == edges[1]:
                continue
            if any(lo.ports.count(e) != 1 or up.ports.count(e) != 1 for e in edges):
                continue
            if all((p in lp) != (q in lp) for p, q in lo.pairing0) and \
                    all((p in upp) != (q in upp) for p, q in up.pairing0):
                candidates.append((edges, lp))
    if not candidates:
        raise DiagramError(f"sites {i} and {j} are not adjacent compatibly with their pairings")
    # prefer the most recently created edges, so combine undoes split exactly
    shared, lo_pos = max(candidates)
    new_ports = list(lo.ports)
    moved: dict[tuple[int, int], tuple[int, int]] = {}
    for x in lo_pos:
        p = up.ports.index(lo.ports[x])
        q = _partner(up.pairing0, p)
        new_ports[x] = up.ports[q]
        moved[(u, q)] = (v, x)
    gone = sorted(shared)

    def relabel(e):
        return e - sum(1 for g in gone if g < e)

    verts = []
    for w, vert in enumerate(d.vertices):
        if w == u:
            continue
        ports = new_ports if w == v else vert.ports
        verts.append(vert.with_ports([relabel(e) for e in ports]))
    orientation = None
    if d.orientation is not None:
        heads = []
        for e, h in enumerate(d.orientation):
            if e in gone:
                continue
            h = moved.get(tuple(h), tuple(h))
            heads.append((h[0] - (1 if h[0] > u else 0), h[1]))
        orientation = tuple(heads)
    return WiringDiagram(d.edge_count - 2, d.free_loops, tuple(verts), orientation)
