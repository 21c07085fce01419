import itertools
import math
import random

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistbracket.mahler import (
    common_relation,
    cyclotomic_poly,
    euler_phi,
    is_cyclotomic,
    lawton_specialize,
    mahler_jensen,
    mahler_lawton,
    mahler_quadrature,
    NuResult,
    nu,
    twist_bound_check,
)
from twistbracket.poly import DELTA, Laurent1, MultiPoly, parse_laurent
from twistbracket.roots import aberth_roots, poly_gcd, squarefree_parts

LEHMER = parse_laurent("z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1")
Z = sympy.Symbol("z")


def _sym(f: Laurent1):
    _, g = f.strip_monomial()
    return sympy.Poly(list(reversed(g.coeff_list())), Z)


def mp_mahler(f: Laurent1, dps: int = 40) -> float:
    """Independent Jensen evaluation with mpmath at high precision."""
    _, g = f.strip_monomial()
    c = list(reversed(g.coeff_list()))
    if len(c) == 1:
        return float(abs(c[0]))
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(c, maxsteps=400, extraprec=4 * dps)
        m = abs(mpmath.mpf(c[0]))
        for r in roots:
            m *= max(1, abs(r))
        return float(m)


def sym_cyclotomic(f: Laurent1) -> bool:
    _, g = f.strip_monomial()
    if abs(g.lead()) != 1:
        return False
    _, factors = sympy.factor_list(_sym(g).as_expr(), Z)
    return all(sympy.Poly(p, Z).is_cyclotomic or sympy.Poly(p, Z).degree() == 0 for p, _ in factors)


def random_poly(rng, deg=8, span=3):
    coeffs = [rng.randint(-span, span) for _ in range(deg + 1)]
    coeffs[0] = coeffs[0] or 1
    coeffs[-1] = coeffs[-1] or 1
    return Laurent1.from_coeff_list(coeffs, 0, "z")


poly_st = st.lists(st.integers(-4, 4), min_size=2, max_size=9).filter(lambda c: c[-1] != 0 and any(c[:-1]))


class TestJensen:
    def test_linear(self):
        est = mahler_jensen(parse_laurent("z - 2"))
        assert est.value == pytest.approx(2.0, abs=1e-12) and est.method == "jensen_roots"

    @pytest.mark.parametrize("n", range(1, 31))
    def test_cyclotomic_is_one(self, n):
        assert abs(mahler_jensen(cyclotomic_poly(n, "z")).value - 1) < 1e-9

    def test_lehmer(self):
        est = mahler_jensen(LEHMER)
        assert est.value == pytest.approx(mp_mahler(LEHMER), abs=1e-12)
        assert est.value == pytest.approx(1.17628081825991750654, abs=1e-12)

    def test_repeated_roots(self):
        f = cyclotomic_poly(7, "z") ** 4 * parse_laurent("z^2 - 3*z + 1")
        want = (3 + math.sqrt(5)) / 2
        assert mahler_jensen(f).value == pytest.approx(want, abs=1e-9)

    def test_delta(self):
        assert mahler_jensen(DELTA).value == pytest.approx(1.0, abs=1e-12)

    def test_monomial_and_content(self):
        assert mahler_jensen(Laurent1({-3: -5})).value == 5
        assert mahler_jensen(parse_laurent("6*z^3 - 3*z + 9")).value == pytest.approx(
            mp_mahler(parse_laurent("6*z^3 - 3*z + 9")), rel=1e-12)

    def test_zero(self):
        with pytest.raises(ValueError):
            mahler_jensen(Laurent1())

    @settings(max_examples=50, deadline=None)
    @given(poly_st)
    def test_matches_high_precision(self, c):
        f = Laurent1.from_coeff_list(c, 0, "z")
        est = mahler_jensen(f)
        assert est.value == pytest.approx(mp_mahler(f), rel=1e-9)
        assert est.value >= 1 - est.error_bound

    @settings(max_examples=40, deadline=None)
    @given(poly_st, poly_st)
    def test_multiplicative(self, a, b):
        f, g = Laurent1.from_coeff_list(a, 0, "z"), Laurent1.from_coeff_list(b, 0, "z")
        mf, mg, mfg = mahler_jensen(f), mahler_jensen(g), mahler_jensen(f * g)
        tol = mfg.error_bound + mf.error_bound * mg.value + mg.error_bound * mf.value + 1e-9 * mfg.value
        assert abs(mfg.value - mf.value * mg.value) <= tol

    @settings(max_examples=40, deadline=None)
    @given(poly_st, st.sampled_from([2, 3, 5]))
    def test_power_substitution(self, c, k):
        f = Laurent1.from_coeff_list(c, 0, "z")
        fk = Laurent1({k * e: v for e, v in f.coeffs.items()}, "z")
        assert abs(mahler_jensen(fk).value - mahler_jensen(f).value) < 1e-9

    @settings(max_examples=40, deadline=None)
    @given(poly_st)
    def test_sign_flip(self, c):
        f = Laurent1.from_coeff_list(c, 0, "z")
        g = Laurent1({e: v * (-1) ** e for e, v in f.coeffs.items()}, "z")
        assert abs(mahler_jensen(g).value - mahler_jensen(f).value) < 1e-9


class TestRoots:
    def test_known_roots(self):
        r, err = aberth_roots([6, -5, 1])
        assert sorted(r.real) == pytest.approx([2, 3])
        assert (err < 1e-10).all()

    def test_zero_roots(self):
        r, _ = aberth_roots([0, 0, -1, 1])
        assert sorted(abs(r)) == pytest.approx([0, 0, 1])

    def test_gcd(self):
        a = [-1, 0, 1]       # z^2 - 1
        b = [1, 2, 1]        # (z+1)^2
        assert poly_gcd(a, b) == [1, 1]

    def test_squarefree(self):
        f = ((parse_laurent("z - 1") ** 3) * parse_laurent("z + 2") ** 2 * parse_laurent("z^2 + 1")).coeff_list()
        parts = {tuple(p): m for p, m in squarefree_parts(f)}
        assert parts == {(1, 0, 1): 1, (2, 1): 2, (-1, 1): 3}


class TestQuadrature:
    def test_constant(self):
        assert mahler_quadrature(MultiPoly.const(3, 2)).value == 3.0

    def test_delta(self):
        assert abs(mahler_quadrature(DELTA, grid=1 << 12).value - 1) < 1e-6

    def test_grid_floor(self):
        with pytest.raises(ValueError):
            mahler_quadrature(DELTA, grid=32)

    def test_two_variables(self):
        # M(1 + x + y) = 3 sqrt(3)/(4 pi) L(chi_-3, 2) ... compare with known value
        f = MultiPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 1)
        assert mahler_quadrature(f, grid=512).value == pytest.approx(1.3813564445, abs=2e-3)

    def test_separates_variables(self):
        f = MultiPoly({(1, 0): 1, (0, 0): -3}, 1) * MultiPoly({(0, 1): 2, (0, 0): 1}, 1)
        assert mahler_quadrature(f, grid=256).value == pytest.approx(6.0, abs=1e-6)


class TestLawton:
    def test_one_variable(self):
        est = mahler_lawton(LEHMER)
        assert est.detail["d"] == 1 and est.value == pytest.approx(mahler_jensen(LEHMER).value)

    def test_specialization(self):
        f = MultiPoly({(0, 1, 0): 1, (1, 0, 1): 2}, 2)
        assert lawton_specialize(f, 3) == Laurent1({3: 1, 10: 2}, "z")

    def test_product_of_separate_variables(self):
        f = MultiPoly({(0, 1): 1, (0, 0): -2}, 1) * MultiPoly({(1, 0): 1, (0, 0): 3}, 1)
        est = mahler_lawton(f, tol=1e-6)
        assert est.detail["converged"] and est.value == pytest.approx(6.0, abs=1e-3)

    def test_ladder_recorded(self):
        f = MultiPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 1)
        est = mahler_lawton(f, tol=1e-3)
        assert est.detail["ladder"][0][0] == 2 and est.method == "lawton_ladder"


class TestCyclotomic:
    @pytest.mark.parametrize("n", range(1, 41))
    def test_matches_sympy(self, n):
        want = sympy.Poly(sympy.cyclotomic_poly(n, Z), Z).all_coeffs()[::-1]
        assert cyclotomic_poly(n, "z").coeff_list() == [int(c) for c in want]

    def test_phi_table(self):
        assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
        for n in range(1, 400):
            assert euler_phi(n) == int(sympy.totient(n))
            assert euler_phi(n) ** 2 >= n / 2

    def test_search_bound(self):
        # every n outside the searched range has phi(n) above the degree
        for deg in range(1, 30):
            assert all(euler_phi(n) > deg for n in range(2 * deg * deg + 1, 2 * deg * deg + 200))

    def test_phi10(self):
        cert = is_cyclotomic(parse_laurent("z^4 - z^3 + z^2 - z + 1"))
        assert cert.cyclotomic and cert.factors == ((10, 1),)

    def test_lehmer_refuted(self):
        cert = is_cyclotomic(LEHMER)
        assert not cert.cyclotomic
        assert cert.residual_mahler == pytest.approx(1.1762808182599, abs=1e-9)

    def test_reconstruction(self):
        f = Laurent1.monomial(-3, -1, "z") * cyclotomic_poly(4, "z") ** 2 * cyclotomic_poly(9, "z")
        cert = is_cyclotomic(f)
        assert cert.cyclotomic and cert.reconstruct("z") == f
        assert cert.factors_text() == "4^2;9^1"

    def test_leading_coefficient(self):
        assert not is_cyclotomic(parse_laurent("2*z + 1")).cyclotomic

    def test_corpus(self):
        rng = random.Random(2024)
        for i in range(200):
            if i % 2:
                f = Laurent1.monomial(rng.randint(-3, 3), rng.choice([1, -1]), "z")
                for _ in range(rng.randint(1, 4)):
                    f = f * cyclotomic_poly(rng.randint(1, 24), "z")
                if i % 4 == 1:
                    f = f * random_poly(rng, rng.randint(1, 4), 2)
            else:
                f = random_poly(rng, rng.randint(1, 8), 2)
            cert = is_cyclotomic(f)
            assert cert.cyclotomic == (mahler_jensen(f).value <= 1 + 1e-6), f.to_text()
            assert cert.cyclotomic == sym_cyclotomic(f), f.to_text()
            if cert.cyclotomic:
                assert cert.reconstruct("z") == f


class TestNu:
    @pytest.mark.parametrize("d", range(1, 21))
    def test_ladder_vectors(self, d):
        res = nu((1, d, d * d))
        assert res.value == d

    @pytest.mark.parametrize("m", [3, 5, 17, 100])
    def test_linear_family(self, m):
        assert nu((1, m, 2 * m + 1)) == NuResult(2, (1, 2, -1))

    def test_linear_family_small_members(self):
        # m = 1 has a height-1 relation; m = 2 ties with (2, -1, 0)
        assert nu((1, 1, 3)).value == 1
        assert nu((1, 2, 5)).value == 2
        assert common_relation([(1, m, 2 * m + 1) for m in range(1, 30)]).witness == (1, 2, -1)

    def test_constant_witness(self):
        xs = [(1, 2 * m, 3 * m * m + 1, 5 * m - 2) for m in range(1, 101)]
        res = common_relation(xs)
        assert res.witness == (4, -5, 0, 2) and res.value == 5
        assert all(nu(x).value <= 5 for x in xs[:6])

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-12, 12), min_size=2, max_size=3))
    def test_witness_exact_and_minimal(self, x):
        res = nu(x)
        assert sum(a * b for a, b in zip(res.witness, x)) == 0
        assert any(res.witness) and max(map(abs, res.witness)) == res.value
        assert res.value <= max(1, max(map(abs, x)))
        for a in itertools.product(range(-res.value + 1, res.value), repeat=len(x)):
            if any(a):
                assert sum(p * q for p, q in zip(a, x)) != 0

    def test_short_vector(self):
        with pytest.raises(ValueError):
            nu((3,))


class TestBound:
    def test_figure_eight_zero_sites(self):
        V = parse_laurent("t^-2 - t^-1 + 1 - t + t^2", "t")
        assert twist_bound_check(V, 0)

    def test_violation(self):
        assert not twist_bound_check(parse_laurent("t - 9", "t"), 1)
