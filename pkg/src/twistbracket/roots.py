"""All-roots refinement for integer polynomials and exact helpers.

Polynomials here are dense ascending integer coefficient lists.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

__all__ = ["aberth_roots", "poly_gcd", "squarefree_parts"]


def _horner_pair(c: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values of p and p' at z; ``c`` is descending."""
    p = np.full_like(z, c[0])
    dp = np.zeros_like(z)
    for a in c[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _newton_ratio(desc: np.ndarray, rev: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z)/p'(z), using the reversed polynomial outside the unit disk."""
    n = len(desc) - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1
    if inside.any():
        p, dp = _horner_pair(desc, z[inside])
        with np.errstate(divide="ignore", invalid="ignore"):
            out[inside] = p / dp
    if (~inside).any():
        zo = z[~inside]
        y = 1 / zo
        q, dq = _horner_pair(rev, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[~inside] = zo * q / (n * q - y * dq)
    return out


def _log_abs_residual(asc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """log |p(z)| evaluated stably for any modulus."""
    n = len(asc) - 1
    desc = asc[::-1]
    res = np.empty(len(z))
    inside = np.abs(z) <= 1
    with np.errstate(divide="ignore"):
        if inside.any():
            res[inside] = np.log(np.abs(np.polyval(desc, z[inside])))
        if (~inside).any():
            zo = z[~inside]
            res[~inside] = np.log(np.abs(np.polyval(asc, 1 / zo))) + n * np.log(np.abs(zo))
    return res


def aberth_roots(coeffs, tol: float = 1e-14, max_iter: int = 2000) -> tuple[np.ndarray, np.ndarray]:
    """Roots and per-root error bounds of an ascending integer coefficient list.

    Simultaneous Aberth-Ehrlich iteration, no deflation. The bound for
    root ``a_k`` is ``n |p(a_k)| / (|lead| prod_{j != k} |a_k - a_j|)``.
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        return np.zeros(0, complex), np.zeros(0)
    big = max(abs(c) for c in coeffs)
    asc = np.array([c / big for c in coeffs], dtype=complex)
    desc = asc[::-1].copy()
    rev = asc.copy()  # coefficients of z^n p(1/z), descending
    if n == 1:
        r = np.array([-asc[0] / asc[1]])
        return r, np.zeros(1)
    # initial guesses on a circle whose radius is the geometric mean of the root moduli
    nz = [i for i, c in enumerate(coeffs) if c]
    lo = nz[0]
    if lo:
        # zero roots are handled exactly
        r, e = aberth_roots(coeffs[lo:], tol, max_iter)
        return np.concatenate([np.zeros(lo, complex), r]), np.concatenate([np.zeros(lo), e])
    radius = math.exp((math.log(abs(coeffs[0])) - math.log(abs(coeffs[-1]))) / n)
    ang = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * ang) * (1 + 0.01 * np.cos(3.7 * np.arange(n)))
    done = np.zeros(n, bool)
    for _ in range(max_iter):
        ratio = _newton_ratio(desc, rev, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        s = (1 / diff).sum(axis=1) - 1  # remove the diagonal 1/1 term
        with np.errstate(divide="ignore", invalid="ignore"):
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        w[done] = 0
        z = z - w
        done |= np.abs(w) <= tol * np.maximum(1, np.abs(z))
        if done.all():
            break
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, 1)
    with np.errstate(divide="ignore"):
        log_sep = np.log(diff).sum(axis=1)
    log_res = _log_abs_residual(asc, z)
    err = n * np.exp(log_res - np.log(abs(asc[-1])) - log_sep)
    return z, err


# -- exact integer polynomial helpers (ascending lists) -------------------


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _primitive(p: list[int]) -> list[int]:
    p = _trim(list(p))
    if not p:
        return p
    g = reduce(math.gcd, p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) - 1 >= db and a:
        la, shift = a[-1], len(a) - 1 - db
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        _trim(a)
    return a


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials by the primitive remainder sequence."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_prem(a, b))
    return a if a else [1]


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def _deriv(p: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:]


def squarefree_parts(p: list[int]) -> list[tuple[list[int], int]]:
    """Split a polynomial into (squarefree factor, multiplicity) pairs, up to content.

    Uses the gcd chain a_0 = p, a_{i+1} = gcd(a_i, a_i'); then
    w_i = a_{i-1} / a_i collects factors of multiplicity >= i.
    """
    chain = [_primitive(p)]
    while len(chain[-1]) > 1:
        chain.append(poly_gcd(chain[-1], _deriv(chain[-1])))
    w = [_exact_div(chain[i - 1], chain[i]) for i in range(1, len(chain))]
    out = []
    for i, wi in enumerate(w):
        f = _exact_div(wi, w[i + 1]) if i + 1 < len(w) else wi
        f = _primitive(f)
        if len(f) > 1:
            out.append((f, i + 1))
    return out
