"""Kauffman bracket, twist-bracket and their specializations."""

from __future__ import annotations

import cmath
import hashlib
import random
from dataclasses import dataclass
from typing import Sequence

from .diagram import DiagramError, WiringDiagram, component_count, serialize_diagram, split_site
from .kernel import state_histogram
from .poly import DELTA, Laurent1, MultiPoly, delta_pairs_equal, divide_delta_power

__all__ = [
    "TwistBracket",
    "a1_identity",
    "check_move3",
    "check_reduction",
    "detect_constant_jones",
    "jones",
    "jones_half",
    "kauffman_bracket",
    "normalized_bracket",
    "reduce_variables",
    "single_site_bracket",
    "sixth_root_check",
    "sixth_root_deviation",
    "specialize_twists",
    "state_brackets",
    "twist_bracket",
    "twist_bracket_from_states",
]

XI = cmath.exp(2j * cmath.pi / 6)


@dataclass(frozen=True)
class TwistBracket:
    poly: MultiPoly
    k: int
    provenance: str = ""

    def __post_init__(self):
        if self.poly.arity != self.k:
            raise ValueError(f"poly arity {self.poly.arity} does not match k={self.k}")

    def to_text(self) -> str:
        return self.poly.to_text()

    def __eq__(self, other):
        if isinstance(other, TwistBracket):
            return self.k == other.k and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.poly))


def diagram_hash(d: WiringDiagram) -> str:
    return hashlib.sha256(serialize_diagram(d).encode()).hexdigest()[:16]


def _delta_powers(n: int) -> list[Laurent1]:
    out = [Laurent1.const(1)]
    for _ in range(n):
        out.append(out[-1] * DELTA)
    return out


def state_brackets(d: WiringDiagram) -> list[Laurent1]:
    """Bracket of every site smoothing; entry ``m`` has site ``i`` at bit ``i`` of ``m``."""
    order = d.site_vertices + d.crossing_vertices
    rows0, rows1 = [], []
    for v in order:
        vert = d.vertices[v]
        for bit, rows in ((0, rows0), (1, rows1)):
            (p, q), (r, s) = vert.smoothing(bit)
            rows.append((vert.ports[p], vert.ports[q], vert.ports[r], vert.ports[s]))
    k = d.k
    c = len(order) - k
    if d.edge_count == 0:
        if d.free_loops == 0:
            raise DiagramError("bracket of the empty diagram is undefined")
        return [DELTA ** (d.free_loops - 1)]
    hist = state_histogram(rows0, rows1, d.edge_count, k)
    dpow = _delta_powers(d.edge_count + d.free_loops)
    out = []
    for mask in range(1 << k):
        h = hist[mask]
        total = Laurent1()
        for comps in range(1, h.shape[1]):
            col = h[:, comps]
            if not col.any():
                continue
            poly = Laurent1({2 * na - c: int(col[na]) for na in range(c + 1) if col[na]})
            total = total + poly * dpow[comps + d.free_loops - 1]
        out.append(total)
    return out


def kauffman_bracket(d: WiringDiagram) -> Laurent1:
    if d.k:
        raise DiagramError(f"diagram has {d.k} open twist sites")
    return state_brackets(d)[0]


def twist_bracket_from_states(table: Sequence[Laurent1], k: int, provenance: str = "") -> TwistBracket:
    """Assemble sum_s prod (x_i-1)^{s_i} delta^{1-s_i} <L_s> from a state table."""
    if len(table) != 1 << k:
        raise ValueError(f"state table needs {1 << k} entries")
    dpow = _delta_powers(k)
    terms: dict[tuple, int] = {}
    for mask, br in enumerate(table):
        if not br:
            continue
        ones = [i for i in range(k) if mask >> i & 1]
        coef = br * dpow[k - len(ones)]
        for sub in range(1 << len(ones)):
            xs = [0] * k
            chosen = 0
            for j, i in enumerate(ones):
                if sub >> j & 1:
                    xs[i] = 1
                    chosen += 1
            sign = -1 if (len(ones) - chosen) % 2 else 1
            tail = tuple(xs)
            for e, cf in coef.coeffs.items():
                key = (e,) + tail
                terms[key] = terms.get(key, 0) + sign * cf
    return TwistBracket(MultiPoly(terms, k), k, provenance)


def twist_bracket(d: WiringDiagram) -> TwistBracket:
    return twist_bracket_from_states(state_brackets(d), d.k, diagram_hash(d))


def specialize_twists(P: TwistBracket, n: Sequence[int]) -> Laurent1:
    """<L_n> from delta^k <L_n> = A^{sigma(n)} P(A, (-A^-4)^{n_1}, ...)."""
    if len(n) != P.k:
        raise ValueError(f"twist vector has length {len(n)}, bracket has arity {P.k}")
    images = [((1,), 1)] + [((-4 * ni,), -1 if ni % 2 else 1) for ni in n]
    val = P.poly.substitute_monomials(images).to_laurent().shift(sum(n))
    num, left = divide_delta_power(val.to_multi(0), P.k)
    if left:
        raise ArithmeticError(f"delta^{P.k} does not divide the specialized twist-bracket")
    return num.to_laurent()


def jones(bracket: Laurent1, writhe: int) -> Laurent1:
    """V(t) = (-A)^{-3w} <L> with t = A^-4."""
    f = bracket.shift(-3 * writhe)
    if writhe % 2:
        f = -f
    bad = [e for e in f.coeffs if e % 4]
    if bad:
        raise ValueError(f"A-exponent {bad[0]} not divisible by 4; wrong writhe or a link with even components (use jones_half)")
    return Laurent1({-e // 4: c for e, c in f.coeffs.items()}, "t")


def jones_half(bracket: Laurent1, writhe: int) -> Laurent1:
    """V in the variable s = t^(1/2) = A^-2; works for every link."""
    f = bracket.shift(-3 * writhe)
    if writhe % 2:
        f = -f
    bad = [e for e in f.coeffs if e % 2]
    if bad:
        raise ValueError(f"A-exponent {bad[0]} is odd; not a bracket of a link diagram")
    return Laurent1({-e // 2: c for e, c in f.coeffs.items()}, "s")


def single_site_bracket(bL0: Laurent1, bL1: Laurent1, n: int) -> Laurent1:
    """<L_n> from the two smoothings of a single site, via exact delta division."""
    x = Laurent1.monomial(-4 * n, -1 if n % 2 else 1)
    num = (DELTA * bL0 + (x - 1) * bL1).shift(n)
    return num.divexact(DELTA)


def detect_constant_jones(P: TwistBracket) -> bool:
    """True iff P = x * f(A); then every filling has the same Jones polynomial."""
    if P.k != 1:
        raise ValueError("constant-Jones test needs a single-site twist-bracket")
    return bool(P.poly.terms) and all(key[1] == 1 for key in P.poly.terms)


def normalized_bracket(P: TwistBracket) -> tuple[MultiPoly, int]:
    """P / delta^k as a reduced (numerator, delta power) pair."""
    return divide_delta_power(P.poly, P.k)


def merge_variable(P: TwistBracket, i: int) -> MultiPoly:
    """Rewrite P in k+1 variables with x_i -> x_i x_{i+1}, later variables shifted up."""
    k = P.k
    images = [((1,) + (0,) * (k + 1), 1)]
    for j in range(k):
        e = [0] * (k + 2)
        if j < i:
            e[j + 1] = 1
        elif j == i:
            e[i + 1] = e[i + 2] = 1
        else:
            e[j + 2] = 1
        images.append((tuple(e), 1))
    return P.poly.substitute_monomials(images)


def check_move3(d: WiringDiagram, i: int) -> bool:
    """Normalized twist-brackets agree across splitting site ``i``."""
    P1 = twist_bracket(d)
    P2 = twist_bracket(split_site(d, i))
    return delta_pairs_equal((merge_variable(P1, i), P1.k), (P2.poly, P2.k))


def sixth_root_deviation(
    P: TwistBracket,
    inserted: Sequence[int] = (),
    samples: int = 20,
    seed: int = 0,
) -> float:
    """max |P(xi, x) - prod x_i prod (-xi^-3)^{n_j}| over random unit x-vectors."""
    rng = random.Random(seed)
    twist_factor = 1 + 0j
    for nj in inserted:
        twist_factor *= (-XI ** -3) ** nj
    worst = 0.0
    for _ in range(samples if P.k else 1):
        xs = [cmath.exp(2j * cmath.pi * rng.random()) for _ in range(P.k)]
        lhs = P.poly.evaluate([XI] + xs)
        rhs = twist_factor
        for x in xs:
            rhs *= x
        worst = max(worst, abs(lhs - rhs))
    return worst


def sixth_root_check(d: WiringDiagram, inserted: Sequence[int] = (), samples: int = 20, seed: int = 0) -> float:
    return sixth_root_deviation(twist_bracket(d), inserted, samples, seed)


def a1_identity(d: WiringDiagram) -> bool:
    """<L>(A=1) = (-1)^w (-2)^{mu-1} = (-1)^c (-2)^{mu-1}."""
    val = kauffman_bracket(d).at_one()
    mu = component_count(d)
    w = d.writhe()
    base = (-2) ** (mu - 1)
    return val == (-1) ** (w % 2) * base == (-1) ** (d.n_crossings % 2) * base


def reduce_variables(P: TwistBracket, a: Sequence[int]) -> MultiPoly:
    """Q(A, x_1..x_{k-1}) = P(A^{a_k}, x_i^{a_k}, A^{4 a_0} prod x_i^{-a_i})."""
    k = P.k
    if len(a) != k + 1:
        raise ValueError(f"relation vector must have length {k + 1}")
    if k < 1 or a[-1] <= 0:
        raise ValueError("last relation coefficient must be positive")
    ak = a[-1]
    images = [((ak,) + (0,) * (k - 1), 1)]
    for i in range(1, k):
        e = [0] * k
        e[i] = ak
        images.append((tuple(e), 1))
    images.append(((4 * a[0],) + tuple(-a[i] for i in range(1, k)), 1))
    return P.poly.substitute_monomials(images)


def check_reduction(P: TwistBracket, a: Sequence[int], n: Sequence[int]) -> bool:
    """Q(A, A^{-4 n_1}, ...) = P(A^{a_k}, A^{-4 a_k n_1}, ..., A^{-4 a_k n_k}) when a.(1,n) = 0."""
    if len(n) != P.k:
        raise ValueError("twist vector length mismatch")
    if a[0] + sum(ai * ni for ai, ni in zip(a[1:], n)):
        raise ValueError("relation vector is not orthogonal to (1, n)")
    Q = reduce_variables(P, a)
    lhs = Q.substitute_monomials([((1,), 1)] + [((-4 * ni,), 1) for ni in n[:-1]])
    ak = a[-1]
    rhs = P.poly.substitute_monomials([((ak,), 1)] + [((-4 * ak * ni,), 1) for ni in n])
    return lhs == rhs
