"""Exact sparse Laurent polynomials over the integers.

Two value types live here:

``Laurent1``
    one variable (``A``, ``t`` or ``z`` by context), exponent -> coefficient.
``MultiPoly``
    variables ``A, x1, ..., xk``; exponent vectors of length ``k + 1``.

Both are immutable, keep no zero coefficients, and use Python ints so
coefficients never overflow.
"""

from __future__ import annotations

import re
from typing import Mapping, Sequence

__all__ = [
    "Laurent1",
    "MultiPoly",
    "DELTA",
    "delta_multi",
    "divide_delta_power",
    "parse_laurent",
    "parse_multi",
    "span",
]




def _fmt_factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _fmt_term(c: int, factors: list[str]) -> str:
    if not factors:
        return str(c)
    return "*".join([str(c)] + factors)


class Laurent1:
    """One-variable Laurent polynomial with integer coefficients."""

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "A"):
        self.coeffs: dict[int, int] = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        self.var = var
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, e: int, c: int = 1, var: str = "A") -> "Laurent1":
        return cls({e: c}, var)

    @classmethod
    def const(cls, c: int, var: str = "A") -> "Laurent1":
        return cls({0: c}, var)

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence[int], low: int = 0, var: str = "A") -> "Laurent1":
        """Build from ascending dense coefficients starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, var)

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self.coeffs)

    def span(self) -> int:
        return self.max_exp() - self.min_exp()

    def lead(self) -> int:
        return self.coeffs[self.max_exp()]

    def trail(self) -> int:
        return self.coeffs[self.min_exp()]

    def coeff(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def coeff_list(self) -> list[int]:
        """Dense ascending coefficients from ``min_exp`` to ``max_exp``."""
        if not self.coeffs:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self.coeffs.get(e, 0) for e in range(lo, hi + 1)]

    def strip_monomial(self) -> tuple[int, "Laurent1"]:
        """Return ``(m, g)`` with ``self = var^m * g`` and ``g(0) != 0``."""
        m = self.min_exp()
        return m, self.shift(-m)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Laurent1":
        if isinstance(other, Laurent1):
            return other
        if isinstance(other, int):
            return Laurent1.const(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return Laurent1(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Laurent1({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent1(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, c), = self.coeffs.items()
                if abs(c) == 1:
                    return Laurent1({e * n: c ** (-n)}, self.var)
            raise ValueError("negative power of a non-unit")
        result = Laurent1.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, m: int) -> "Laurent1":
        """Multiply by ``var**m``."""
        return Laurent1({e + m: c for e, c in self.coeffs.items()}, self.var)

    def scale_exponents(self, k: int) -> "Laurent1":
        """``f(z) -> f(z**k)``; ``k`` may be negative, not zero."""
        if k == 0:
            raise ValueError("exponent scale must be nonzero")
        return Laurent1({e * k: c for e, c in self.coeffs.items()}, self.var)

    def sign_flip(self) -> "Laurent1":
        """``f(z) -> f(-z)``."""
        return Laurent1({e: (-c if e % 2 else c) for e, c in self.coeffs.items()}, self.var)

    def divmod(self, other: "Laurent1") -> tuple["Laurent1", "Laurent1"]:
        """Long division of polynomials after normalizing both to ``z^0``.

        Returns ``(q, r)`` with ``self = q*other + r`` where the quotient keeps the
        Laurent shift. Only meaningful when the divisor's leading coefficient
        divides everything that comes up; otherwise the remainder absorbs the rest.
        """
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return Laurent1({}, self.var), Laurent1({}, self.var)
        ms, a = self.strip_monomial()
        mo, b = other.strip_monomial()
        rem = dict(a.coeffs)
        db = b.max_exp()
        lb = b.coeffs[db]
        q: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < db:
                break
            c = rem[top]
            if c % lb:
                break
            f = c // lb
            shift = top - db
            q[shift] = f
            for e, cb in b.coeffs.items():
                k = e + shift
                v = rem.get(k, 0) - f * cb
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return (Laurent1(q, self.var).shift(ms - mo), Laurent1(rem, self.var).shift(ms))

    def divexact(self, other: "Laurent1") -> "Laurent1":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact Laurent division")
        return q

    # -- comparisons / evaluation --------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        if isinstance(other, Laurent1):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def evaluate(self, z: complex) -> complex:
        return sum(c * z ** e for e, c in self.coeffs.items()) if self.coeffs else 0j

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def with_var(self, var: str) -> "Laurent1":
        return Laurent1(self.coeffs, var)

    def to_multi(self, arity: int = 0) -> "MultiPoly":
        z = (0,) * arity
        return MultiPoly({(e,) + z: c for e, c in self.coeffs.items()}, arity)

    def l2_norm(self) -> float:
        return sum(c * c for c in self.coeffs.values()) ** 0.5

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            parts.append(_fmt_term(c, [_fmt_factor(self.var, e)] if e else []))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Laurent1({self.to_text()!r}, var={self.var!r})"


DELTA = Laurent1({2: -1, -2: -1})


class MultiPoly:
    """Laurent polynomial in ``A, x1..xk`` keyed by exponent tuples."""

    __slots__ = ("terms", "arity", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None, arity: int = 0):
        self.arity = arity
        n = arity + 1
        clean: dict[tuple, int] = {}
        for key, c in (terms or {}).items():
            if not c:
                continue
            key = tuple(int(e) for e in key)
            if len(key) != n:
                raise ValueError(f"exponent vector {key} has length {len(key)}, expected {n}")
            clean[key] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int, arity: int = 0) -> "MultiPoly":
        return cls({(0,) * (arity + 1): c}, arity)

    @classmethod
    def gen(cls, i: int, arity: int) -> "MultiPoly":
        """Variable number ``i``: 0 is ``A``, ``i >= 1`` is ``x_i``."""
        e = [0] * (arity + 1)
        e[i] = 1
        return cls({tuple(e): 1}, arity)

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "MultiPoly":
        return cls({tuple(exps): c}, len(exps) - 1)

    def var_names(self) -> list[str]:
        return ["A"] + [f"x{i}" for i in range(1, self.arity + 1)]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.arity)
        if isinstance(other, Laurent1):
            return other.to_multi(self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return MultiPoly(out, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return MultiPoly(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self == MultiPoly.const(other, self.arity)
        if isinstance(other, Laurent1):
            return self.arity == 0 and self.to_laurent() == other
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def degree_in(self, i: int) -> tuple[int, int]:
        """(min, max) exponent of variable ``i`` over all terms."""
        if not self.terms:
            raise ValueError("zero polynomial")
        es = [k[i] for k in self.terms]
        return min(es), max(es)

    def to_laurent(self, var: str = "A") -> Laurent1:
        if self.arity != 0:
            raise ValueError("only arity-0 MultiPoly converts to Laurent1")
        return Laurent1({k[0]: c for k, c in self.terms.items()}, var)

    def x_slices(self) -> dict[tuple, Laurent1]:
        """Group terms by their x-exponents; each value is a Laurent1 in ``A``."""
        groups: dict[tuple, dict[int, int]] = {}
        for k, c in self.terms.items():
            groups.setdefault(k[1:], {})[k[0]] = c
        return {x: Laurent1(d) for x, d in groups.items()}

    @classmethod
    def from_x_slices(cls, slices: Mapping[tuple, Laurent1], arity: int) -> "MultiPoly":
        terms = {}
        for x, lp in slices.items():
            for e, c in lp.coeffs.items():
                terms[(e,) + tuple(x)] = c
        return cls(terms, arity)

    def scale_A(self, lp: Laurent1) -> "MultiPoly":
        return self * lp.to_multi(self.arity)

    def substitute_monomials(self, images: Sequence[tuple[Sequence[int], int]]) -> "MultiPoly":
        """Compose with unit monomials.

        ``images[i] = (exps, sign)`` sends variable ``i`` (``A`` first) to
        ``sign * prod(y_j ** exps[j])`` in a fresh ring whose arity is
        ``len(exps) - 1``. Signs are expanded as ``sign ** exponent``.
        """
        if len(images) != self.arity + 1:
            raise ValueError(f"need {self.arity + 1} images, got {len(images)}")
        n_out = len(images[0][0])
        for exps, sign in images:
            if len(exps) != n_out:
                raise ValueError("images have inconsistent arity")
            if sign not in (1, -1):
                raise ValueError("image sign must be +1 or -1")
        out: dict[tuple, int] = {}
        for k, c in self.terms.items():
            e = [0] * n_out
            sgn = 1
            for ki, (exps, sign) in zip(k, images):
                if ki:
                    for j, ej in enumerate(exps):
                        e[j] += ki * ej
                    if sign == -1 and ki % 2:
                        sgn = -sgn
            key = tuple(e)
            out[key] = out.get(key, 0) + sgn * c
        return MultiPoly(out, n_out - 1)

    def evaluate(self, point: Sequence[complex]) -> complex:
        if len(point) != self.arity + 1:
            raise ValueError("point arity mismatch")
        total = 0j
        for k, c in self.terms.items():
            v = complex(c)
            for z, e in zip(point, k):
                if e:
                    v *= z ** e
            total += v
        return total

    def l2_norm(self) -> float:
        return sum(c * c for c in self.terms.values()) ** 0.5

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.var_names()
        parts = []
        for k in sorted(self.terms, reverse=True):
            factors = [_fmt_factor(n, e) for n, e in zip(names, k) if e]
            parts.append(_fmt_term(self.terms[k], factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, arity={self.arity})"


def delta_multi(arity: int) -> MultiPoly:
    return DELTA.to_multi(arity)


def span(p: Laurent1) -> int:
    """Highest minus lowest exponent; undefined (ValueError) for zero."""
    if not p:
        raise ValueError("span of the zero polynomial is undefined")
    return p.span()


def _div_delta_once(p: MultiPoly) -> MultiPoly | None:
    slices = {}
    for x, lp in p.x_slices().items():
        q, r = lp.divmod(DELTA)
        if r:
            return None
        slices[x] = q
    return MultiPoly.from_x_slices(slices, p.arity)


def divide_delta_power(p: MultiPoly, k: int) -> tuple[MultiPoly, int]:
    """Represent ``p / delta**k`` reduced as far as exact division allows."""
    if k < 0:
        raise ValueError("delta power must be nonnegative")
    while k > 0 and p:
        q = _div_delta_once(p)
        if q is None:
            break
        p, k = q, k - 1
    if not p:
        k = 0
    return p, k


def delta_pairs_equal(a: tuple[MultiPoly, int], b: tuple[MultiPoly, int]) -> bool:
    """Compare ``na/delta^ka`` with ``nb/delta^kb`` by cross-multiplication."""
    (na, ka), (nb, kb) = a, b
    d = delta_multi(na.arity)
    return na * d ** kb == nb * d ** ka


# -- canonical text parsing -------------------------------------------

_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?$")


def _split_terms(text: str) -> list[str]:
    # split on + / - that are not part of an exponent (preceded by '^' or '^(')
    terms, cur, depth = [], "", 0
    prev = ""
    for ch in text.replace(" ", ""):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in ("^", "*", ""):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
        prev = ch
    if cur:
        terms.append(cur)
    return [t for t in terms if t not in ("", "+")]


def _parse_terms(text: str) -> list[tuple[int, dict[str, int]]]:
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    out = []
    for raw in _split_terms(text):
        sign = 1
        t = raw
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps: dict[str, int] = {}
        for f in t.split("*"):
            if not f:
                raise ValueError(f"malformed term {raw!r}")
            if f.lstrip("-").isdigit():
                coeff *= int(f)
                continue
            m = _FACTOR_RE.match(f)
            if not m:
                raise ValueError(f"malformed factor {f!r}")
            name, e = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
            exps[name] = exps.get(name, 0) + e
        out.append((coeff, exps))
    return out


def parse_laurent(text: str, var: str | None = None) -> Laurent1:
    """Parse one-variable text such as ``-1*A^2 + -1*A^-2`` or ``z^2 - z - 1``."""
    terms = _parse_terms(text)
    names = {n for _, e in terms for n in e}
    if len(names) > 1:
        raise ValueError(f"expected one variable, found {sorted(names)}")
    name = var or (names.pop() if names else "A")
    coeffs: dict[int, int] = {}
    for c, e in terms:
        k = e.get(name, 0) if e else 0
        if e and name not in e:
            raise ValueError(f"unexpected variable in {text!r}")
        coeffs[k] = coeffs.get(k, 0) + c
    return Laurent1(coeffs, name)


def parse_multi(text: str, arity: int | None = None) -> MultiPoly:
    """Parse text in variables ``A, x1..xk`` (``x``/``y`` accepted for k <= 2)."""
    terms = _parse_terms(text)
    alias = {"x": "x1", "y": "x2"}
    names = set()
    for _, e in terms:
        for n in e:
            n = alias.get(n, n)
            if n != "A" and not re.fullmatch(r"x[1-9][0-9]*", n):
                raise ValueError(f"unknown variable {n!r}")
            names.add(n)
    k = max([int(n[1:]) for n in names if n != "A"], default=0)
    if arity is None:
        arity = k
    elif k > arity:
        raise ValueError(f"text uses x{k} but arity is {arity}")
    acc: dict[tuple, int] = {}
    for c, e in terms:
        vec = [0] * (arity + 1)
        for n, ex in e.items():
            n = alias.get(n, n)
            vec[0 if n == "A" else int(n[1:])] += ex
        key = tuple(vec)
        acc[key] = acc.get(key, 0) + c
    return MultiPoly(acc, arity)
