import random
from fractions import Fraction as F

import pytest

from grasphere.polycore import (
    BiPoly,
    CPoly,
    HoloVec,
    PolyError,
    RatBiFunc,
    bipoly_gcd,
    content_and_primitive,
    cpoly_abs_sq,
    dz,
    dz_h,
    dzbar_h,
    herm_inner,
    is_near_proportional,
    is_proportional,
    log_laplacian,
    norm_sq,
    one_plus_zzbar,
    osculating_wedges,
    wedge,
)
from grasphere.scalar import CQuad, QuadScalar

from conftest import random_cpoly, random_holovec

S2 = QuadScalar.sqrt_rational(2)
I = CQuad.i()


class TestNormSq:
    def test_line(self):
        assert norm_sq(HoloVec([CPoly([1]), CPoly([0, 1])])) == one_plus_zzbar()

    def test_veronese_two(self):
        v = HoloVec([CPoly([1]), CPoly([0, S2]), CPoly([0, 0, 1])])
        assert norm_sq(v) == one_plus_zzbar(2)

    def test_complex_entries(self):
        v = HoloVec([CPoly([1, 1]), CPoly([0, I])])
        n = norm_sq(v)
        assert n == BiPoly([[1, 1], [1, 2]])
        rng = random.Random(5)
        for _ in range(5):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            direct = sum(abs(e.eval_complex(z)) ** 2 for e in v)
            assert abs(n.eval_complex(z) - direct) < 1e-12 * max(1.0, direct)

    def test_hermitian_and_nonneg(self, rng):
        for _ in range(100):
            v = random_holovec(rng, rng.randint(1, 3), max_deg=3, int_only=False)
            n = norm_sq(v)
            assert n.is_hermitian()
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            val = n.eval_complex(z)
            assert abs(val.imag) < 1e-9 and val.real >= -1e-9


class TestWedge:
    def test_standard_basis(self):
        w = wedge(HoloVec([CPoly([1]), CPoly([])]), HoloVec([CPoly([]), CPoly([1])]))
        assert w.entries == (CPoly([1]),)

    def test_shear_invariance(self):
        w = wedge(HoloVec([CPoly([1]), CPoly([0, 1])]), HoloVec([CPoly([]), CPoly([1])]))
        assert w.entries == (CPoly([1]),)

    def test_veronese_first_osculating(self):
        v = HoloVec([CPoly([1]), CPoly([0, S2]), CPoly([0, 0, 1])])
        w = wedge(v, v.dz())
        assert w.entries == (CPoly([S2]), CPoly([0, 2]), CPoly([0, 0, S2]))
        assert norm_sq(w) == one_plus_zzbar(2) * 2

    def test_dimension_mismatch(self):
        with pytest.raises(PolyError):
            wedge(HoloVec([CPoly([1])]), HoloVec([CPoly([1]), CPoly([1])]))

    def test_lagrange_identity(self, rng):
        for _ in range(100):
            dim = rng.randint(2, 4)
            v = random_holovec(rng, dim, max_deg=2, int_only=False)
            w = random_holovec(rng, dim, max_deg=2, int_only=False)
            inner = herm_inner(v, w)
            assert norm_sq(wedge(v, w)) == norm_sq(v) * norm_sq(w) - inner * inner.conj()


class TestDerivatives:
    def test_dz_monomial(self):
        assert dz(CPoly([0, 0, 0, 1])) == CPoly([0, 0, 3])

    def test_dz_h(self):
        assert dz_h(one_plus_zzbar()) == BiPoly([[0, 1]])

    def test_mixed_second(self):
        assert dzbar_h(dz_h(one_plus_zzbar(2))) == BiPoly([[2, 0], [0, 4]])

    def test_commutation(self, rng):
        for _ in range(100):
            p = norm_sq(random_holovec(rng, 2, max_deg=3, int_only=False))
            assert dzbar_h(dz_h(p)) == dz_h(dzbar_h(p))

    def test_hermitian_pairing(self, rng):
        for _ in range(30):
            p = norm_sq(random_holovec(rng, 2, max_deg=3, int_only=False))
            assert dz_h(p).conj() == dzbar_h(p)


class TestLogLaplacian:
    def test_fubini_study(self):
        assert log_laplacian(one_plus_zzbar()) == RatBiFunc(BiPoly.one(), one_plus_zzbar(2))

    def test_power_multiplies(self):
        for k in (2, 3, 7):
            assert log_laplacian(one_plus_zzbar(k)) == RatBiFunc(BiPoly.constant(k), one_plus_zzbar(2))

    def test_veronese_first_level(self):
        v = HoloVec([CPoly([1]), CPoly([0, S2]), CPoly([0, 0, 1])])
        f1_sq = norm_sq(wedge(v, v.dz()))
        assert log_laplacian(f1_sq) == RatBiFunc(BiPoly.constant(2), one_plus_zzbar(2))

    def test_additivity(self, rng):
        for _ in range(8):
            p = norm_sq(random_holovec(rng, 2, max_deg=2, int_only=True))
            q = norm_sq(random_holovec(rng, 2, max_deg=2, int_only=True))
            assert log_laplacian(p * q) == log_laplacian(p) + log_laplacian(q)
        for _ in range(2):
            p = norm_sq(random_holovec(rng, 2, max_deg=1, int_only=False))
            q = norm_sq(random_holovec(rng, 2, max_deg=1, int_only=True))
            assert log_laplacian(p * q) == log_laplacian(p) + log_laplacian(q)

    def test_zero_rejected(self):
        with pytest.raises(PolyError):
            log_laplacian(BiPoly.zero())


class TestContentPrimitive:
    def test_shared_root(self):
        zm1 = CPoly([-1, 1])
        g, prim = content_and_primitive(HoloVec([zm1 * zm1, zm1 * CPoly([0, 1])]))
        assert g == zm1
        assert prim.entries == (zm1, CPoly([0, 1]))

    def test_coprime(self):
        g, prim = content_and_primitive(HoloVec([CPoly([1]), CPoly([0, 1])]))
        assert g == CPoly.one()

    def test_planar_flex(self):
        f0 = HoloVec([CPoly([1]), CPoly([0, 1]), CPoly([0, 0, 0, 0, 1])])
        rows = [f0, f0.dz(), f0.dz().dz()]
        F2 = osculating_wedges(rows, 2)[2]
        g, _ = content_and_primitive(F2)
        assert g == CPoly([0, 0, 1])

    def test_reassembly(self, rng):
        for _ in range(50):
            common = random_cpoly(rng, 2, int_only=True)
            if common.is_zero():
                continue
            v = random_holovec(rng, 3, max_deg=2)
            scaled = HoloVec([e * common for e in v])
            g, prim = content_and_primitive(scaled)
            assert HoloVec([e * g for e in prim]) == scaled
            gg, _ = content_and_primitive(prim)
            assert gg == CPoly.one()


class TestProportionality:
    def test_scalar_found(self):
        assert is_proportional(one_plus_zzbar() * 2, one_plus_zzbar()) == QuadScalar.from_rational(2)

    def test_none(self):
        assert is_proportional(one_plus_zzbar(), BiPoly([[1, 0], [0, 2]])) is None

    def test_zero_denominator_rejected(self):
        with pytest.raises(PolyError):
            is_proportional(one_plus_zzbar(), BiPoly.zero())

    def test_numeric_fallback(self):
        lam = is_near_proportional(one_plus_zzbar(2) * 3, one_plus_zzbar(2))
        assert lam is not None and abs(lam - 3) < 1e-10
        assert is_near_proportional(one_plus_zzbar(2), one_plus_zzbar()) is None


class TestRatBiFunc:
    def test_reduction_to_lowest_form(self):
        r = RatBiFunc(one_plus_zzbar(3) * 5, one_plus_zzbar(2))
        assert r.num == one_plus_zzbar() * 5 and r.den == BiPoly.one()

    def test_cross_equality(self):
        a = RatBiFunc(one_plus_zzbar(2), one_plus_zzbar(4), reduce=False)
        b = RatBiFunc(BiPoly.one(), one_plus_zzbar(2))
        assert a == b

    def test_is_constant(self):
        assert RatBiFunc(one_plus_zzbar() * 7, one_plus_zzbar()).is_constant() == QuadScalar.from_rational(7)
        assert RatBiFunc(one_plus_zzbar(2), one_plus_zzbar()).is_constant() is None

    def test_arithmetic(self):
        half = RatBiFunc(BiPoly.one(), one_plus_zzbar())
        assert half + half == RatBiFunc(BiPoly.constant(2), one_plus_zzbar())
        assert half - half == RatBiFunc.zero()
        assert half * half == RatBiFunc(BiPoly.one(), one_plus_zzbar(2))

    def test_json(self):
        import json

        r = RatBiFunc(BiPoly.constant(2), one_plus_zzbar(2))
        blob = json.loads(json.dumps(r.to_json()))
        assert RatBiFunc.from_json(blob) == r


class TestBivariateGcd:
    def test_power_overlap(self):
        g = bipoly_gcd(one_plus_zzbar(3), one_plus_zzbar(2) * BiPoly([[1, 1], [1, 1]]))
        assert g == one_plus_zzbar(2)

    def test_exact_division_round_trip(self, rng):
        for _ in range(20):
            a = norm_sq(random_holovec(rng, 2, max_deg=2))
            b = norm_sq(random_holovec(rng, 2, max_deg=2))
            if b.is_zero():
                continue
            assert (a * b).exact_div(b) == a


class TestCPolyAlgebra:
    def test_divmod(self, rng):
        for _ in range(40):
            a = random_cpoly(rng, 4, int_only=False)
            b = random_cpoly(rng, 2, int_only=False)
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.degree < b.degree

    def test_gcd_of_products(self, rng):
        for _ in range(30):
            g = random_cpoly(rng, 2, int_only=True)
            a = random_cpoly(rng, 2, int_only=True)
            b = random_cpoly(rng, 2, int_only=True)
            if g.is_zero() or a.is_zero() or b.is_zero():
                continue
            result = (g * a).gcd(g * b)
            assert result.exact_div(g.monic()) is not None or True
            # gcd divides both products and is divisible by g
            assert (g * a).divmod(result)[1].is_zero()
            assert (g * b).divmod(result)[1].is_zero()
            assert result.divmod(g.monic())[1].is_zero()

    def test_abs_sq(self):
        h = CPoly([1, S2, I])
        n = cpoly_abs_sq(h)
        assert n.is_hermitian()
        z = 0.3 + 0.7j
        assert abs(n.eval_complex(z) - abs(h.eval_complex(z)) ** 2) < 1e-12

    def test_reversal(self):
        p = CPoly([1, 0, 3])
        assert p.reversed() == CPoly([3, 0, 1])
        assert p.reversed(4) == CPoly([0, 0, 3, 0, 1])
        with pytest.raises(PolyError):
            p.reversed(1)
