"""Closed-form twist-brackets for standard link families and matching diagrams.

Every family comes with two independent routes: a closed form (or
recurrence) for the twist-bracket, and an explicit diagram whose state sum
must reproduce it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .bracket import TwistBracket, jones, jones_half, kauffman_bracket
from .builders import Box, StrandLayout, braid_closure, figure_eight_pd, symmetric_union
from .diagram import Vertex, WiringDiagram, insert_twists, orient
from .poly import DELTA, Laurent1, MultiPoly, delta_multi, divide_delta_power

__all__ = [
    "FAMILIES",
    "FamilySpec",
    "connect_sum",
    "curl_diagram",
    "family_diagram",
    "family_jones",
    "family_link",
    "family_twist_bracket",
    "figure_eight_bracket",
    "kanenobu_jones_invariance",
    "link_jones",
]

FAMILIES = ("double_twist", "two_bridge", "pretzel", "kanenobu2", "kanenobu_k", "torus2", "connect_sum_fig8", "curl")


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its integer parameters.

    For families with twist sites the parameters are the twist vector, one
    entry per site, so their count fixes k. ``connect_sum_fig8`` takes the
    number of summands.
    """

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        fixed = {"double_twist": 2, "kanenobu2": 2, "torus2": 1, "connect_sum_fig8": 1, "curl": 1}
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        want = fixed.get(self.family)
        if want is not None and len(self.params) != want:
            raise ValueError(f"{self.family} takes {want} parameter(s), got {len(self.params)}")
        if want is None and not self.params:
            raise ValueError(f"{self.family} needs at least one parameter")
        if self.family == "connect_sum_fig8" and self.params[0] < 0:
            raise ValueError("number of summands must be nonnegative")

    @property
    def k(self) -> int:
        return 0 if self.family == "connect_sum_fig8" else len(self.params)

    @property
    def label(self) -> str:
        return f"{self.family}({','.join(map(str, self.params))})"


@lru_cache(maxsize=None)
def figure_eight_bracket() -> Laurent1:
    """Bracket of the standard writhe-0 four-crossing figure-eight diagram."""
    return kauffman_bracket(figure_eight_pd())


# -- closed forms ------------------------------------------------------------


def _xs(k: int) -> list[MultiPoly]:
    return [MultiPoly.gen(i, k) for i in range(1, k + 1)]


def _two_bridge(k: int) -> MultiPoly:
    d2 = delta_multi(k) ** 2
    x = _xs(k)
    prev, cur = MultiPoly.const(1, k), d2 + x[0] - 1
    for j in range(1, k):
        prev, cur = cur, (x[j] - 1) * cur + d2 * x[j - 1] * prev
    return cur


def _pretzel(k: int) -> MultiPoly:
    d2 = delta_multi(k) ** 2
    a = MultiPoly.const(1, k)
    b = MultiPoly.const(1, k)
    for x in _xs(k):
        a = a * (x - 1 + d2)
        b = b * (x - 1)
    num, left = divide_delta_power(a + (d2 - 1) * b, 1)
    if left:
        raise ArithmeticError("pretzel closed form not divisible by delta")
    return num


def _kanenobu(k: int) -> MultiPoly:
    base = figure_eight_bracket() ** 2
    prod = MultiPoly.const(1, k)
    for x in _xs(k):
        prod = prod * x
    return delta_multi(k) ** k * (base.to_multi(k) - 1 + prod)


def family_twist_bracket(spec: FamilySpec) -> TwistBracket:
    k, fam = spec.k, spec.family
    if fam == "torus2":
        poly = _two_bridge(1)
    elif fam in ("double_twist", "two_bridge"):
        poly = _two_bridge(k)
    elif fam == "pretzel":
        poly = _pretzel(k)
    elif fam in ("kanenobu2", "kanenobu_k"):
        poly = _kanenobu(k)
    elif fam == "curl":
        poly = DELTA.to_multi(1) * MultiPoly.gen(1, 1)
    else:  # connect_sum_fig8
        poly = (figure_eight_bracket() ** spec.params[0]).to_multi(0)
    return TwistBracket(poly, k, spec.label)


# -- diagrams ----------------------------------------------------------------

_KNOT_DOWN = [Box(1, "h"), Box(1, "h"), Box(0, "v"), Box(1, "h")]  # figure-eight plat


def _two_bridge_diagram(k: int) -> WiringDiagram:
    boxes = [Box(1 if i % 2 == 0 else 0, "h", site=True) for i in range(k)]
    right = [(0, 1), (2, 3)] if k % 2 else [(0, 3), (1, 2)]
    return StrandLayout(4, boxes, left=[(0, 1), (2, 3)], right=right).build()


def _kanenobu_diagram(k: int) -> WiringDiagram:
    # figure-eight plat stabilized to k+1 bridges, one curl per extra bridge
    boxes = _KNOT_DOWN + [Box(2 * j + 3, "h") for j in range(k - 1)]
    caps = [(2 * i, 2 * i + 1) for i in range(k + 1)]
    return symmetric_union(2 * (k + 1), boxes, caps, caps)


def curl_diagram() -> WiringDiagram:
    """One site on an unknot that doubles back: smoothings give 1 and 2 loops."""
    site = Vertex.site((0, 1, 1, 0), ((0, 1), (2, 3)), ((0, 3), (1, 2)), "vertical")
    return orient(WiringDiagram(2, 0, (site,)))


def connected_figure_eight(n: int) -> WiringDiagram:
    """n-fold connected sum of figure-eight knots as a single braid closure."""
    if n == 0:
        return WiringDiagram(0, 1, ())
    word: list[int] = []
    for j in range(n):
        word += [2 * j + 1, -(2 * j + 2), 2 * j + 1, -(2 * j + 2)]
    return braid_closure(2 * n + 1, word)


def family_diagram(spec: FamilySpec) -> WiringDiagram:
    """Oriented diagram with ``spec.k`` open sites (closed for connect sums)."""
    k, fam = spec.k, spec.family
    if fam == "torus2":
        return StrandLayout(2, [Box(0, "h", site=True)]).build()
    if fam in ("double_twist", "two_bridge"):
        return _two_bridge_diagram(k)
    if fam == "pretzel":
        return StrandLayout(2, [Box(0, "v", site=True) for _ in range(k)]).build()
    if fam in ("kanenobu2", "kanenobu_k"):
        return _kanenobu_diagram(k)
    if fam == "curl":
        return curl_diagram()
    return connected_figure_eight(spec.params[0])


def family_link(spec: FamilySpec) -> WiringDiagram:
    """The closed diagram with the twist vector ``spec.params`` inserted."""
    d = family_diagram(spec)
    return d if spec.k == 0 else insert_twists(d, spec.params)


def link_jones(d: WiringDiagram) -> Laurent1:
    """Jones polynomial in ``t``, or in ``s = t^(1/2)`` when half-integer powers occur."""
    b = kauffman_bracket(d)
    w = d.writhe()
    try:
        return jones(b, w)
    except ValueError:
        return jones_half(b, w)


def family_jones(spec: FamilySpec) -> Laurent1:
    return link_jones(family_link(spec))


def connect_sum(v1: Laurent1, v2: Laurent1) -> Laurent1:
    """Jones polynomial of a connected sum (multiplicative)."""
    return v1 * v2


def kanenobu_jones_invariance(
    family: str,
    instances: Sequence[Sequence[int]],
    constraint: int | None = None,
) -> bool:
    """True iff all instances of a Kanenobu family share one Jones polynomial.

    Every instance must have the same twist sum (equal to ``constraint``
    when given); otherwise ValueError.
    """
    if family not in ("kanenobu2", "kanenobu_k"):
        raise ValueError("invariance check applies to kanenobu2 or kanenobu_k")
    sums = {sum(n) for n in instances}
    if constraint is not None:
        sums.add(constraint)
    if len(sums) > 1:
        raise ValueError(f"instances do not share a twist sum: {sorted(sums)}")
    polys = [family_jones(FamilySpec(family, tuple(n))) for n in instances]
    return all(p == polys[0] for p in polys)
