import random
from fractions import Fraction

import pytest

from grasphere.polycore import CPoly, HoloVec
from grasphere.scalar import CQuad, QuadScalar


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_rational(rng, max_num=9, max_den=9, allow_zero=True):
    while True:
        q = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if allow_zero or q != 0:
            return q


def random_quad(rng, radicands=(1, 2, 3, 5), max_terms=3):
    terms = []
    for r in rng.sample(radicands, k=rng.randint(1, min(max_terms, len(radicands)))):
        terms.append((random_rational(rng), Fraction(r)))
    from grasphere.scalar import quad_normalize

    return quad_normalize(terms)


def random_cquad(rng, complex_ok=True):
    re = random_quad(rng)
    im = random_quad(rng) if complex_ok and rng.random() < 0.4 else QuadScalar.zero()
    return CQuad(re, im)


def random_cpoly(rng, max_deg=3, complex_ok=True, int_only=False):
    deg = rng.randint(0, max_deg)
    if int_only:
        return CPoly([rng.randint(-4, 4) for _ in range(deg + 1)])
    return CPoly([random_cquad(rng, complex_ok) for _ in range(deg + 1)])


def random_holovec(rng, dim, max_deg=3, int_only=True):
    while True:
        v = HoloVec([random_cpoly(rng, max_deg, int_only=int_only) for _ in range(dim)])
        if not v.is_zero():
            return v


def random_t(rng, max_den=40):
    """Random rational in (-1, 1), nonzero denominator of the family allowed."""
    while True:
        den = rng.randint(2, max_den)
        num = rng.randint(-den + 1, den - 1)
        t = Fraction(num, den)
        if -1 < t < 1:
            return t
