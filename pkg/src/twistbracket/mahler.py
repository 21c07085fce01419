"""Mahler measures, cyclotomic certificates, the nu invariant and twist-family scans."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .bracket import jones, jones_half, specialize_twists, twist_bracket
from .diagram import WiringDiagram, insert_twists
from .poly import Laurent1, MultiPoly, span
from .roots import aberth_roots, squarefree_parts

__all__ = [
    "CycloCertificate",
    "MahlerEstimate",
    "NuResult",
    "ScanRow",
    "common_relation",
    "cyclotomic_poly",
    "euler_phi",
    "is_cyclotomic",
    "mahler_jensen",
    "mahler_lawton",
    "mahler_quadrature",
    "nu",
    "scan_twist_family",
    "twist_bound_check",
]


@dataclass(frozen=True)
class MahlerEstimate:
    value: float
    method: str
    error_bound: float
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CycloCertificate:
    verdict: str
    monomial: tuple[int, int]  # (exponent, sign)
    factors: tuple[tuple[int, int], ...]
    residual_mahler: float | None = None

    @property
    def cyclotomic(self) -> bool:
        return self.verdict == "cyclotomic"

    def reconstruct(self, var: str = "t") -> Laurent1:
        e, sign = self.monomial
        out = Laurent1.monomial(e, sign, var)
        for n, mult in self.factors:
            out = out * cyclotomic_poly(n, var) ** mult
        return out

    def factors_text(self) -> str:
        return ";".join(f"{n}^{m}" for n, m in self.factors)


@dataclass(frozen=True)
class NuResult:
    value: int
    witness: tuple[int, ...]


# -- one variable: Jensen's formula ------------------------------------------


def _dense(f: Laurent1) -> list[int]:
    return f.coeff_list()


def mahler_jensen(f: Laurent1, squarefree: bool | None = None) -> MahlerEstimate:
    """|lead| * prod max(1, |root|) with roots from simultaneous refinement.

    Repeated factors are split off exactly first (for moderate degree), so
    every root solve is on a squarefree polynomial.
    """
    if not f:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    _, g = f.strip_monomial()
    coeffs = _dense(g)
    deg = len(coeffs) - 1
    if deg == 0:
        return MahlerEstimate(float(abs(coeffs[0])), "jensen_roots", 0.0, {"degree": 0, "roots": 0, "squarefree_parts": 0})
    if squarefree is None:
        squarefree = deg <= 300
    parts = squarefree_parts(coeffs) if squarefree and deg > 1 else [(coeffs, 1)]
    content = abs(coeffs[-1])
    for p, mult in parts:
        content //= abs(p[-1]) ** mult
    log_m = math.log(content) if content else 0.0
    err_rel = 0.0
    n_roots = 0
    for p, mult in parts:
        log_m += mult * math.log(abs(p[-1]))
        roots, errs = aberth_roots(p)
        n_roots += len(roots)
        mod = np.abs(roots)
        log_m += mult * float(np.log(np.maximum(1.0, mod)).sum())
        near = mod + errs > 1
        err_rel += mult * float((errs[near] / np.maximum(1.0, mod[near] - errs[near])).sum())
    value = math.exp(log_m)
    return MahlerEstimate(value, "jensen_roots", value * math.expm1(err_rel) if err_rel < 50 else math.inf,
                          {"degree": deg, "roots": n_roots, "squarefree_parts": len(parts)})


# -- several variables: torus quadrature -------------------------------------


def _as_multi(f) -> MultiPoly:
    return f.to_multi(0) if isinstance(f, Laurent1) else f


def _mean_log(f: MultiPoly, grid: int, chunk: int = 1 << 21) -> float:
    """Mean of log|f| over the shifted grid ((j + 1/6)/N) in every variable."""
    s = f.arity + 1
    keys = np.array(list(f.terms), dtype=np.int64).reshape(-1, s)
    coefs = np.array([float(c) for c in f.terms.values()])
    coefs = coefs / np.abs(coefs).max()
    theta = 2 * np.pi * (np.arange(grid) + 1 / 6) / grid
    total = 0.0
    inner = grid ** (s - 1)
    rows = max(1, chunk // max(inner, len(coefs)))
    # phase of each term at the inner grid, built once
    inner_phase = np.zeros((len(coefs), inner))
    if s > 1:
        mesh = np.meshgrid(*([theta] * (s - 1)), indexing="ij")
        flat = [m.ravel() for m in mesh]
        for t, key in enumerate(keys):
            inner_phase[t] = sum(int(key[i + 1]) * flat[i] for i in range(s - 1))
    inner_vals = coefs[:, None] * np.exp(1j * inner_phase)
    for start in range(0, grid, rows):
        th = theta[start:start + rows]
        outer = np.exp(1j * np.outer(keys[:, 0], th))  # terms x rows
        vals = outer.T @ inner_vals  # rows x inner
        with np.errstate(divide="ignore"):
            total += float(np.log(np.abs(vals)).sum())
    return total / grid ** s + math.log(np.abs([float(c) for c in f.terms.values()]).max())


def mahler_quadrature(f, grid: int = 256) -> MahlerEstimate:
    """exp of the mean of log|f| over an N^s torus grid; error from N vs N/2."""
    f = _as_multi(f)
    if not f:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    if grid < 64:
        raise ValueError("quadrature grid must be at least 64")
    if len(f.terms) == 1:
        c = abs(next(iter(f.terms.values())))
        return MahlerEstimate(float(c), "quadrature", 0.0, {"grid": grid})
    fine = math.exp(_mean_log(f, grid))
    coarse = math.exp(_mean_log(f, grid // 2))
    return MahlerEstimate(fine, "quadrature", abs(fine - coarse), {"grid": grid, "coarse": coarse})


# -- Lawton ladder ------------------------------------------------------------


def lawton_specialize(f: MultiPoly, d: int) -> Laurent1:
    """f(z, z^d, z^{d^2}, ...)."""
    powers = [d ** i for i in range(f.arity + 1)]
    out: dict[int, int] = {}
    for key, c in f.terms.items():
        e = sum(k * p for k, p in zip(key, powers))
        out[e] = out.get(e, 0) + c
    return Laurent1(out, "z")


def mahler_lawton(f, tol: float = 1e-3, d_cap: int = 50, d_start: int = 2) -> MahlerEstimate:
    """Ladder M(f(z, z^d, ...)) for d = d_start, d_start+1, ... until two values agree to ``tol``."""
    f = _as_multi(f)
    if not f:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    if f.arity == 0:
        est = mahler_jensen(f.to_laurent())
        return MahlerEstimate(est.value, "lawton_ladder", est.error_bound, {"d": 1, "converged": True, "ladder": [est.value]})
    ladder: list[tuple[int, float]] = []
    prev = None
    for d in range(d_start, d_cap + 1):
        g = lawton_specialize(f, d)
        if not g:
            continue
        val = mahler_jensen(g).value
        ladder.append((d, val))
        if prev is not None and abs(val - prev) < tol:
            return MahlerEstimate(val, "lawton_ladder", abs(val - prev), {"d": d, "converged": True, "ladder": ladder})
        prev = val
    last = ladder[-1][1] if ladder else math.nan
    delta = abs(ladder[-1][1] - ladder[-2][1]) if len(ladder) > 1 else math.inf
    return MahlerEstimate(last, "lawton_ladder", delta, {"d": d_cap, "converged": False, "ladder": ladder})


# -- cyclotomic certificates --------------------------------------------------


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    m, p, sign = n, 2, 1
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if m > 1 else sign


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    num = Laurent1.const(1)
    den = Laurent1.const(1)
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        factor = Laurent1({d: 1, 0: -1})
        if mu == 1:
            num = num * factor
        elif mu == -1:
            den = den * factor
    return tuple(num.divexact(den).coeff_list())


def cyclotomic_poly(n: int, var: str = "t") -> Laurent1:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    return Laurent1.from_coeff_list(list(_cyclotomic_coeffs(n)), 0, var)


def is_cyclotomic(f: Laurent1) -> CycloCertificate:
    """Decide whether f = +-monomial * product of cyclotomic polynomials, exactly."""
    if not f:
        raise ValueError("zero polynomial")
    e, g = f.strip_monomial()
    g = g.with_var(f.var)
    if abs(g.lead()) != 1 or abs(g.trail()) != 1:
        return CycloCertificate("not_cyclotomic", (e, 1), (), mahler_jensen(g).value)
    factors = []
    deg = g.max_exp()
    for n in range(1, 2 * deg * deg + 1):
        if g.max_exp() == 0:
            break
        if euler_phi(n) > g.max_exp():
            continue
        phi = cyclotomic_poly(n, f.var)
        mult = 0
        while g.max_exp() >= phi.max_exp():
            q, r = g.divmod(phi)
            if r:
                break
            g, mult = q, mult + 1
        if mult:
            factors.append((n, mult))
    if g.max_exp() == 0 and abs(g.lead()) == 1:
        return CycloCertificate("cyclotomic", (e, g.lead()), tuple(factors))
    return CycloCertificate("not_cyclotomic", (e, 1), tuple(factors), mahler_jensen(g).value)


# -- the nu invariant ---------------------------------------------------------


def _normalize(a: Sequence[int]) -> tuple[int, ...]:
    for v in a:
        if v:
            return tuple(a) if v > 0 else tuple(-x for x in a)
    return tuple(a)


def _relations_at_height(xs: Sequence[Sequence[int]], h: int) -> Iterable[tuple[int, ...]]:
    """Vectors a with max|a_i| <= h, a . x = 0 for every x in xs."""
    s = len(xs[0])
    pivot = next((j for j in range(s - 1, -1, -1) if xs[0][j]), None)
    if pivot is None:
        yield tuple(1 if j == 0 else 0 for j in range(s))
        return
    free = [j for j in range(s) if j != pivot]
    for vals in itertools.product(range(-h, h + 1), repeat=s - 1):
        dot = sum(v * xs[0][j] for v, j in zip(vals, free))
        if dot % xs[0][pivot]:
            continue
        ap = -dot // xs[0][pivot]
        if abs(ap) > h:
            continue
        a = [0] * s
        for v, j in zip(vals, free):
            a[j] = v
        a[pivot] = ap
        if not any(a):
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) == 0 for x in xs[1:]):
            yield _normalize(a)


def _padding_bound(x: Sequence[int]) -> int:
    if any(v == 0 for v in x):
        return 1
    return min(max(abs(x[i]), abs(x[j])) for i in range(len(x)) for j in range(i + 1, len(x)))


def nu(x: Sequence[int], cap: int | None = None) -> NuResult:
    """Least height of a nonzero integer vector orthogonal to x, with a witness."""
    x = [int(v) for v in x]
    if len(x) < 2:
        raise ValueError("nu needs a vector of length at least 2")
    bound = _padding_bound(x)
    cap = bound if cap is None else cap
    for h in range(1, cap + 1):
        hits = sorted(set(_relations_at_height([x], h)))
        best = [a for a in hits if max(map(abs, a)) == h]
        if best:
            return NuResult(h, best[-1])
    raise ValueError(f"no relation of height <= {cap} (bound is {bound})")


def common_relation(xs: Sequence[Sequence[int]], cap: int = 10) -> NuResult:
    """Least-height integer vector orthogonal to every vector in ``xs`` simultaneously."""
    xs = [[int(v) for v in x] for x in xs]
    if not xs or len({len(x) for x in xs}) != 1:
        raise ValueError("need vectors of one common length")
    for h in range(1, cap + 1):
        hits = sorted(set(a for a in _relations_at_height(xs, h) if max(map(abs, a)) == h))
        if hits:
            return NuResult(h, hits[-1])
    raise ValueError(f"no common relation of height <= {cap}")


# -- bounds and scans ---------------------------------------------------------


def twist_bound_check(V: Laurent1, k: int, tol: float = 1e-9) -> bool:
    """M(V) <= 8^k, allowing the root error bound plus ``tol``."""
    est = mahler_jensen(V)
    return est.value <= 8 ** k + est.error_bound + tol


@dataclass(frozen=True)
class ScanRow:
    m: int
    span_V: int
    mahler: float
    cyclotomic: bool
    factors: str
    span_bracket: int
    jones: Laurent1

    def csv_fields(self) -> list[str]:
        return [str(self.m), str(self.span_V), f"{self.mahler:.12g}", "yes" if self.cyclotomic else "no", self.factors]


CSV_COLUMNS = ("m", "span_V", "mahler", "cyclotomic", "factors")


def scan_twist_family(
    d: WiringDiagram,
    m_values: Iterable[int],
    site: int = 0,
    fill: Sequence[int] | None = None,
) -> list[ScanRow]:
    """Fill ``site`` with m twists (others with ``fill``) and tabulate the Jones data.

    ``span_V`` is measured in powers of t, so 4 * span_V = span of the bracket.
    """
    if not 0 <= site < d.k:
        raise ValueError(f"diagram has no site {site}")
    fill = list(fill) if fill is not None else [0] * d.k
    if len(fill) != d.k:
        raise ValueError("fill vector length must equal the number of sites")
    P = twist_bracket(d)
    rows = []
    for m in m_values:
        n = list(fill)
        n[site] = m
        br = specialize_twists(P, n)
        w = insert_twists(d, n).writhe()
        Vh = jones_half(br, w)
        try:
            V = jones(br, w)
        except ValueError:
            V = Vh
        cert = is_cyclotomic(V)
        rows.append(ScanRow(m, span(Vh) // 2, mahler_jensen(V).value, cert.cyclotomic,
                            cert.factors_text(), span(br), V))
    return rows
