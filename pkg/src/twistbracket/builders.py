"""Programmatic diagram construction on horizontal strands.

Strands run left to right on rows numbered from the top. A box between
rows ``r`` and ``r+1`` has counterclockwise ports [LL, RL, RU, LU] (lower
left, lower right, upper right, upper left). Crossing type ``"h"`` has its
A-smoothing on the horizontal arcs LL-RL, RU-LU; type ``"v"`` has it on the
vertical arcs RL-RU, LU-LL. With every strand flowing rightward, ``"h"`` is
a positive crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import Vertex, WiringDiagram, _Assembler, orient

__all__ = [
    "Box",
    "StrandLayout",
    "braid_closure",
    "figure_eight_pd",
    "from_pd",
    "mirror_boxes",
    "symmetric_union",
]

LL, RL, RU, LU = "LL", "RL", "RU", "LU"
_H_ORDER = (LL, RL, RU, LU)
_V_ORDER = (RL, RU, LU, LL)


@dataclass(frozen=True)
class Box:
    """A crossing (``kind="h"``/``"v"``) or a site whose pairing0 is ``"h"``/``"v"``."""

    row: int
    kind: str
    site: bool = False

    def flipped(self) -> "Box":
        if self.site:
            return self
        return Box(self.row, "v" if self.kind == "h" else "h")


def mirror_boxes(boxes: Sequence[Box]) -> list[Box]:
    """Left-right reflection: reversed order, crossing types swapped."""
    return [b.flipped() for b in reversed(boxes)]


class StrandLayout:
    """Boxes on ``rows`` horizontal strands plus left/right closures.

    A closure is ``"braid"`` (row r on the right joins row r on the left) or a
    list of row pairs capped off on that side.
    """

    def __init__(self, rows: int, boxes: Sequence[Box], left="braid", right=None):
        self.rows = rows
        self.boxes = list(boxes)
        self.left = left
        self.right = right if right is not None else ("braid" if left == "braid" else [])
        for b in self.boxes:
            if not 0 <= b.row < rows - 1:
                raise ValueError(f"box row {b.row} out of range for {rows} rows")
        if (self.left == "braid") != (self.right == "braid"):
            raise ValueError("braid closure must be used on both sides")

    def build(self) -> WiringDiagram:
        asm = _Assembler()
        cur = [("L", r) for r in range(self.rows)]
        hints = []
        for b in self.boxes:
            if b.site:
                order = _H_ORDER
                hor = ((0, 1), (2, 3))
                ver = ((0, 3), (1, 2))
                p0, p1 = (hor, ver) if b.kind == "h" else (ver, hor)
                tag = "horizontal" if b.kind == "h" else "vertical"
                v = asm.add(Vertex.site((0, 0, 0, 0), p0, p1, tag))
            else:
                order = _H_ORDER if b.kind == "h" else _V_ORDER
                v = asm.add(Vertex.crossing((0, 0, 0, 0)))
            pos = {name: i for i, name in enumerate(order)}
            up, lo = b.row, b.row + 1
            asm.link(cur[up], ("P", v, pos[LU]))
            asm.link(cur[lo], ("P", v, pos[LL]))
            hints += [("P", v, pos[LU]), ("P", v, pos[LL])]
            cur[up], cur[lo] = ("P", v, pos[RU]), ("P", v, pos[RL])
        for r in range(self.rows):
            asm.link(cur[r], ("R", r))
        if self.left == "braid":
            for r in range(self.rows):
                asm.link(("R", r), ("L", r))
        else:
            for side, caps in (("L", self.left), ("R", self.right)):
                used = sorted(x for c in caps for x in c)
                if used != list(range(self.rows)):
                    raise ValueError(f"{side} caps must pair every row exactly once")
                for a, c in caps:
                    asm.link((side, a), (side, c))
        verts, n_edges, loops, labels = asm.build()
        d = WiringDiagram(n_edges, loops, tuple(verts))
        if self.left == "braid":
            return orient(d, {labels[t]: t[1:] for t in hints})
        return orient(d)


def braid_closure(strands: int, word: Sequence[int]) -> WiringDiagram:
    """Closure of a braid word; ``i`` is sigma_i (1-based), ``-i`` its inverse."""
    boxes = [Box(abs(g) - 1, "h" if g > 0 else "v") for g in word]
    return StrandLayout(strands, boxes).build()


def symmetric_union(
    rows: int,
    boxes: Sequence[Box],
    left_caps: Sequence[tuple[int, int]],
    right_caps: Sequence[tuple[int, int]],
    bridged: int = 0,
) -> WiringDiagram:
    """Symmetric union of a plat diagram D with its mirror.

    D has ``rows`` strands, ``boxes`` and its own left and right caps. The
    mirror is placed to its right. Right cap number ``bridged`` is replaced
    by straight rows (the connected-sum band). Every other right cap of D
    becomes a twist site whose pairing0 restores the two caps and whose
    pairing1 bridges straight across the axis.
    """
    caps = [tuple(sorted(c)) for c in right_caps]
    mid: list[Box] = []
    for i, (a, c) in enumerate(caps):
        if c != a + 1:
            raise ValueError("symmetric union needs right caps on adjacent rows")
        if i != bridged:
            mid.append(Box(a, "v", site=True))
    layout = StrandLayout(rows, list(boxes) + mid + mirror_boxes(boxes),
                          left=list(left_caps), right=list(left_caps))
    return layout.build()


def from_pd(pd: Sequence[Sequence[int]], one_based: bool = True) -> WiringDiagram:
    """Oriented knot diagram from a PD code in the X[i,j,k,l] convention.

    Port 0 is the incoming under-strand; labels are consecutive along the
    knot orientation.
    """
    off = 1 if one_based else 0
    verts = tuple(Vertex.crossing([e - off for e in x]) for x in pd)
    d = WiringDiagram(2 * len(pd), 0, verts)
    hints = {x[0] - off: (v, 0) for v, x in enumerate(pd)}
    return orient(d, hints)


FIGURE_EIGHT_PD = ((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8))


def figure_eight_pd() -> WiringDiagram:
    return from_pd(FIGURE_EIGHT_PD)
