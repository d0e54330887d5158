import json
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasphere.scalar import (
    CQuad,
    ImaginaryRadicalError,
    QuadScalar,
    RadicalBasis,
    quad_is_nonneg,
    quad_mul,
    quad_normalize,
    squarefree_split,
)

from conftest import random_quad


def q(x) -> QuadScalar:
    return QuadScalar.from_rational(F(x))


def sqrt(x) -> QuadScalar:
    return QuadScalar.sqrt_rational(F(x))


class TestNormalize:
    def test_square_part_extracted(self):
        assert quad_normalize([(F(1), F(8))]) == 2 * sqrt(2)

    def test_sqrt_one_is_rational(self):
        assert quad_normalize([(F(3), F(1))]) == q(3)

    def test_rational_radicand(self):
        half = quad_normalize([(F(1), F(1, 2))])
        assert half == F(1, 2) * sqrt(2)
        assert half * half == q(F(1, 2))
        assert abs(float(half) - math.sqrt(0.5)) < 1e-12

    def test_negative_radicand_rejected(self):
        with pytest.raises(ImaginaryRadicalError, match="route through CQuad"):
            quad_normalize([(F(1), F(-2))])

    def test_like_terms_merge(self):
        assert quad_normalize([(F(1), F(2)), (F(2), F(8)), (F(-5), F(2))]) == QuadScalar.zero()


class TestMul:
    def test_same_radicand_squares(self):
        assert quad_mul(sqrt(2), sqrt(2)) == q(2)

    def test_difference_of_squares(self):
        assert (1 + sqrt(2)) * (1 - sqrt(2)) == q(-1)

    def test_composite_radicand(self):
        prod = quad_mul(sqrt(2), sqrt(3))
        assert prod == sqrt(6)
        assert abs(float(prod) - math.sqrt(6)) < 1e-12

    def test_gcd_reduction(self):
        assert sqrt(6) * sqrt(10) == 2 * sqrt(15)


class TestSign:
    def test_zero(self):
        assert quad_is_nonneg(QuadScalar.zero())
        assert QuadScalar.zero().sign() == 0

    def test_one_minus_sqrt2(self):
        assert not quad_is_nonneg(1 - sqrt(2))

    def test_three_minus_two_sqrt2(self):
        # (sqrt(2)-1)^2 > 0
        assert quad_is_nonneg(3 - 2 * sqrt(2))

    def test_tight_values(self):
        conv = F(665857, 470832)  # convergent of sqrt(2), off by ~1e-12
        assert (sqrt(2) - conv).sign() == -1
        assert (conv - sqrt(2)).sign() == 1


def test_squarefree_split_examples():
    assert squarefree_split(720) == (12, 5)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(97) == (1, 97)
    s, r = squarefree_split(2**10 * 3**3 * 49)
    assert s * s * r == 2**10 * 3**3 * 49 and r == 3


def test_mul_commutative_associative_exact():
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = (random_quad(rng) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_normalize_matches_float_evaluation():
    rng = random.Random(12)
    for _ in range(500):
        raw = [
            (F(rng.randint(-9, 9), rng.randint(1, 9)), F(rng.randint(0, 30), rng.randint(1, 9)))
            for _ in range(rng.randint(1, 4))
        ]
        val = quad_normalize(raw)
        direct = sum(float(c) * math.sqrt(float(r)) for c, r in raw)
        assert abs(float(val) - direct) <= 1e-12 * max(1.0, abs(direct))


def test_squares_are_nonneg():
    rng = random.Random(13)
    for _ in range(500):
        x = random_quad(rng)
        assert quad_is_nonneg(x * x)


def test_inverse_round_trip():
    rng = random.Random(14)
    for _ in range(200):
        x = random_quad(rng)
        if x.is_zero():
            continue
        assert x * x.inverse() == QuadScalar.one()


@given(
    a=st.fractions(min_value=-5, max_value=5),
    b=st.fractions(min_value=-5, max_value=5),
    c=st.fractions(min_value=-5, max_value=5),
)
@settings(max_examples=80)
def test_field_axioms_on_sqrt2_slice(a, b, c):
    x = a + b * QuadScalar.sqrt_rational(2)
    y = c - QuadScalar.sqrt_rational(2)
    assert (x + y) - y == x
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


def test_json_round_trip():
    rng = random.Random(15)
    for _ in range(50):
        x = random_quad(rng)
        blob = json.loads(json.dumps(x.to_json()))
        assert QuadScalar.from_json(blob) == x
    assert json.dumps(q(F(1, 3)).to_json()) == '{"terms": [{"coeff": "1/3", "radicand": "1"}]}'


class TestRadicalBasis:
    def test_spanning_refines(self):
        rb = RadicalBasis.spanning([6, 10, 15])
        assert rb.radicands == (2, 3, 5)
        assert all(rb.spans(r) for r in (2, 3, 5, 6, 10, 15, 30))

    def test_invariants_enforced(self):
        with pytest.raises(Exception):
            RadicalBasis([4])
        with pytest.raises(Exception):
            RadicalBasis([2, 6])
        with pytest.raises(Exception):
            RadicalBasis([3, 2])

    def test_quadscalar_basis(self):
        x = sqrt(6) + sqrt(10)
        assert x.basis().radicands == (2, 3, 5)


class TestCQuad:
    def test_conjugation_involution(self):
        z = CQuad(sqrt(2), 1 + sqrt(3))
        assert z.conj().conj() == z

    def test_abs_sq_real_nonneg(self):
        z = CQuad(sqrt(2), 1 + sqrt(3))
        n = z.abs_sq()
        assert n == (z * z.conj()).re
        assert quad_is_nonneg(n)

    def test_inverse(self):
        z = CQuad(1 + sqrt(2), sqrt(3))
        assert z * z.inverse() == CQuad(1)

    def test_i_squares_to_minus_one(self):
        i = CQuad.i()
        assert i * i == CQuad(-1)

    def test_json(self):
        z = CQuad(sqrt(5), q(F(-2, 7)))
        assert CQuad.from_json(json.loads(json.dumps(z.to_json()))) == z
