"""Named identity suites over seeded corpora, shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bracket import (
    a1_identity,
    check_move3,
    kauffman_bracket,
    sixth_root_check,
    specialize_twists,
    state_brackets,
    twist_bracket,
)
from .diagram import insert_twists
from .families import FamilySpec, family_diagram, family_twist_bracket, kanenobu_jones_invariance
from .generate import random_braid_closure, random_plat, random_wiring_diagram
from .poly import DELTA

__all__ = ["SUITES", "SuiteResult", "family_corpus", "run_suite"]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    max_deviation: float | None = None

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def record(self, ok: bool, label: str):
        self.cases += 1
        if not ok:
            self.failures.append(label)

    def summary(self) -> str:
        extra = f", max deviation {self.max_deviation:.3g}" if self.max_deviation is not None else ""
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.cases} cases, {len(self.failures)} failures{extra})"


def family_corpus() -> list[FamilySpec]:
    """Family instances used by the closed-form, sixth-root and bound checks."""
    specs = [FamilySpec("torus2", (5,)), FamilySpec("double_twist", (2, -3)), FamilySpec("curl", (3,))]
    specs += [FamilySpec("two_bridge", tuple(range(1, k + 1))) for k in range(1, 5)]
    specs += [FamilySpec("pretzel", tuple(2 * i + 3 for i in range(k))) for k in range(1, 6)]
    specs += [FamilySpec("kanenobu2", (3, -3))]
    specs += [FamilySpec("kanenobu_k", tuple([1] * k)) for k in range(1, 5)]
    return specs


def prop22_suite(seed: int = 0, count: int = 120) -> SuiteResult:
    res = SuiteResult("prop22")
    rng = random.Random(seed)
    for i in range(count):
        nv = rng.randint(1, 6)
        k = rng.randint(0, min(3, nv))
        d = random_wiring_diagram(rng, nv, k)
        n = [rng.randint(-4, 4) for _ in range(k)]
        ok = specialize_twists(twist_bracket(d), n) == kauffman_bracket(insert_twists(d, n))
        res.record(ok, f"case {i}: {nv} vertices, n={n}")
    return res


def families_suite(seed: int = 0) -> SuiteResult:
    res = SuiteResult("families")
    for spec in family_corpus():
        d = family_diagram(spec)
        res.record(family_twist_bracket(spec) == twist_bracket(d), spec.label)
        table = state_brackets(d)
        k = spec.k
        if spec.family == "pretzel":
            want = [DELTA ** (k - bin(m).count("1") - 1) if m != (1 << k) - 1 else DELTA for m in range(1 << k)]
            res.record(table == want, f"{spec.label} state table")
        elif spec.family.startswith("kanenobu"):
            res.record(all(table[m] == DELTA ** bin(m).count("1") for m in range(1, 1 << k)),
                       f"{spec.label} state table")
    return res


def sixthroot_suite(seed: int = 0) -> SuiteResult:
    res = SuiteResult("sixthroot", max_deviation=0.0)
    rng = random.Random(seed)
    for spec in family_corpus():
        d = family_diagram(spec)
        k = d.k
        # leave a random subset open and fill the rest
        keep = [rng.random() < 0.5 for _ in range(k)]
        fill = [None if keep[i] else rng.randint(-4, 4) for i in range(k)]
        partial = insert_twists(d, fill) if k else d
        inserted = [n for n in fill if n is not None]
        for target, ins in ((d, []), (partial, inserted)):
            dev = sixth_root_check(target, ins, seed=rng.randrange(1 << 30))
            res.max_deviation = max(res.max_deviation, dev)
            res.record(dev < 1e-9, f"{spec.label} inserted={ins}")
    return res


def a1_suite(seed: int = 0, count: int = 50) -> SuiteResult:
    res = SuiteResult("a1")
    rng = random.Random(seed)
    for i in range(count):
        if i % 2:
            d = random_braid_closure(rng, rng.randint(1, 4), rng.randint(0, 10))
        else:
            d = random_plat(rng, rng.randint(1, 3), rng.randint(0, 10))
        res.record(a1_identity(d), f"case {i}")
    return res


def move3_suite(seed: int = 0, count: int = 12) -> SuiteResult:
    res = SuiteResult("move3")
    for spec in family_corpus():
        d = family_diagram(spec)
        if 1 <= d.k <= 3:
            for i in range(d.k):
                res.record(check_move3(d, i), f"{spec.label} site {i}")
    rng = random.Random(seed)
    for j in range(count):
        k = rng.randint(1, 3)
        d = random_wiring_diagram(rng, rng.randint(k, 5), k)
        res.record(check_move3(d, rng.randrange(k)), f"random {j}")
    return res


def kanenobu_suite(seed: int = 0) -> SuiteResult:
    res = SuiteResult("kanenobu")
    res.record(kanenobu_jones_invariance("kanenobu2", [(p, -p) for p in range(-3, 4)], 0), "K(p,-p)")
    rng = random.Random(seed)
    for total in (-1, 0, 1, 2):
        inst = [(total, 0, 0)]
        for _ in range(3):
            a, b = rng.randint(-3, 3), rng.randint(-3, 3)
            inst.append((a, b, total - a - b))
        res.record(kanenobu_jones_invariance("kanenobu_k", inst, total), f"sum {total}: {inst}")
    return res


SUITES = {
    "prop22": prop22_suite,
    "families": families_suite,
    "sixthroot": sixthroot_suite,
    "a1": a1_suite,
    "move3": move3_suite,
    "kanenobu": kanenobu_suite,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(seed=seed)
