"""Exact arithmetic in multi-quadratic extensions of the rationals.

A :class:`QuadScalar` is a finite sum  sum_r  q_r * sqrt(r)  where every
radicand r is a squarefree positive integer and every coefficient q_r is a
rational number (radicand 1 carries the rational part).  Square roots of
distinct squarefree integers are linearly independent over Q, so equality is
decidable coefficient-wise and the representation is canonical.  The set is
closed under ring operations because sqrt(a)*sqrt(b) = g*sqrt((a/g)(b/g))
with g = gcd(a, b), and the product (a/g)(b/g) of coprime squarefree
integers is squarefree.

:class:`CQuad` pairs two QuadScalars as real and imaginary part; curve
entries, polynomial coefficients and all downstream exact computations live
there.  Values of both classes are immutable and hashable.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

__all__ = [
    "ScalarError",
    "ImaginaryRadicalError",
    "QuadScalar",
    "RadicalBasis",
    "CQuad",
    "quad_normalize",
    "quad_mul",
    "quad_is_nonneg",
    "squarefree_split",
]

RationalLike = Union[int, Fraction]

# Trial-division bound before the Pollard-rho fallback kicks in.  All paper
# radicands are tiny; the bound only matters for stress inputs.
_TRIAL_BOUND = 10**6


class ScalarError(ValueError):
    pass


class ImaginaryRadicalError(ScalarError):
    """Raised when a square root of a negative quantity is requested."""


# ---------------------------------------------------------------------------
# integer factorization helpers (squarefree reduction)
# ---------------------------------------------------------------------------


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> int:
    """A nontrivial factor of odd composite n, or 0 if the budget runs out."""
    rng = random.Random(0xC0FFEE ^ n)
    spent = 0
    while spent < budget:
        c = rng.randrange(1, n)
        x = rng.randrange(2, n)
        y, d = x, 1
        while d == 1 and spent < budget:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            spent += 1
        if 1 < d < n:
            return d
    return 0


_RHO_BUDGET = 3 * 10**5


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Factorization of n >= 1 into coprime parts, primes where feasible.

    Trial division up to the bound, perfect-square extraction, primality
    testing and budgeted Pollard rho.  A huge composite that resists the
    budget is kept whole as a single coprime part: it then acts as one
    opaque radicand, which keeps all arithmetic consistent (every use sees
    the same key) at the cost of full cross-form canonicality for such
    stress-sized inputs; every paper-scale value factors completely.
    """
    if n < 1:
        raise ScalarError(f"cannot factor {n}")
    out: dict[int, int] = {}
    rest = n
    p = 2
    while p * p <= rest and p <= _TRIAL_BOUND:
        while rest % p == 0:
            out[p] = out.get(p, 0) + 1
            rest //= p
        p += 1 if p == 2 else 2
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m, _RHO_BUDGET)
        if f:
            stack += [f, m // f]
        else:
            out[m] = out.get(m, 0) + 1
    return tuple(sorted(out.items()))


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s*s*r and r squarefree, for n >= 1.

    Squarefreeness of r is exact whenever n factors within the effort
    budget (always, for paper-scale inputs)."""
    s, r = 1, 1
    for p, e in _factorize(n):
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


# ---------------------------------------------------------------------------
# QuadScalar
# ---------------------------------------------------------------------------


def _coerce_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarError(f"expected an exact rational, got {type(x).__name__}")


class QuadScalar:
    """An exact element  sum_r q_r*sqrt(r)  of a multi-quadratic field."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, Fraction]] = ()):
        # terms must already be canonical: squarefree radicands, no zeros
        self._terms: tuple[tuple[int, Fraction], ...] = tuple(terms)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(q: RationalLike) -> "QuadScalar":
        q = _coerce_fraction(q)
        return QuadScalar(((1, q),) if q else ())

    @staticmethod
    def sqrt_rational(r: RationalLike) -> "QuadScalar":
        """sqrt(r) for rational r >= 0, reduced to q*sqrt(squarefree int)."""
        return quad_normalize([(Fraction(1), _coerce_fraction(r))])

    @staticmethod
    def zero() -> "QuadScalar":
        return _ZERO

    @staticmethod
    def one() -> "QuadScalar":
        return _ONE

    # -- views --------------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return len(self._terms) == 0 or (len(self._terms) == 1 and self._terms[0][0] == 1)

    def rational_part(self) -> Fraction:
        for r, q in self._terms:
            if r == 1:
                return q
        return Fraction(0)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is irrational")
        return self.rational_part()

    def radicands(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self._terms if r != 1)

    def basis(self) -> "RadicalBasis":
        return RadicalBasis.spanning(self.radicands())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "QuadScalar":
        other = _as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for r, q in other._terms:
            s = acc.get(r, Fraction(0)) + q
            if s:
                acc[r] = s
            else:
                acc.pop(r, None)
        return QuadScalar(sorted(acc.items()))

    __radd__ = __add__

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(tuple((r, -q) for r, q in self._terms))

    def __sub__(self, other) -> "QuadScalar":
        other = _as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QuadScalar":
        return _as_quad(other) + (-self)

    def __mul__(self, other) -> "QuadScalar":
        other = _as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for r1, q1 in self._terms:
            for r2, q2 in other._terms:
                if r1 == r2:
                    r, q = 1, q1 * q2 * r1
                elif r1 == 1:
                    r, q = r2, q1 * q2
                elif r2 == 1:
                    r, q = r1, q1 * q2
                else:
                    g = math.gcd(r1, r2)
                    r, q = (r1 // g) * (r2 // g), q1 * q2 * g
                s = acc.get(r, Fraction(0)) + q
                if s:
                    acc[r] = s
                else:
                    acc.pop(r, None)
        return QuadScalar(sorted(acc.items()))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuadScalar":
        if n < 0:
            return (self ** (-n)).inverse()
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "QuadScalar":
        """Exact multiplicative inverse via conjugate products.

        Conjugation flips the sign of sqrt(b) for one element b of the
        coprime base of the radicands (gcd refinement only, no factoring);
        multiplying by the conjugate eliminates b from the support, so the
        recursion bottoms out at a rational."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QuadScalar")
        if self.is_rational():
            return QuadScalar.from_rational(1 / self.rational_part())
        b = min(RadicalBasis.spanning(self.radicands()).radicands)
        conj = QuadScalar(tuple((r, -q if r % b == 0 else q) for r, q in self._terms))
        return conj * (self * conj).inverse()

    def __truediv__(self, other) -> "QuadScalar":
        other = _as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadScalar":
        return _as_quad(other) * self.inverse()

    # -- order / sign -------------------------------------------------------

    def _bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        scale = 1 << bits
        for r, q in self._terms:
            if r == 1:
                lo += q
                hi += q
                continue
            s = math.isqrt(r << (2 * bits))
            rlo, rhi = Fraction(s, scale), Fraction(s + 1, scale)
            if q >= 0:
                lo += q * rlo
                hi += q * rhi
            else:
                lo += q * rhi
                hi += q * rlo
        return lo, hi

    def sign(self) -> int:
        """-1, 0 or +1; decided exactly (zero by coefficient test, else by
        interval refinement, which terminates because sqrt's of distinct
        squarefree integers are linearly independent over Q)."""
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            return 1 if self._terms[0][1] > 0 else -1
        bits = 16
        while True:
            lo, hi = self._bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def is_nonneg(self) -> bool:
        return self.sign() >= 0

    def __float__(self) -> float:
        out = 0.0
        for r, q in self._terms:
            out += float(q) if r == 1 else float(q) * math.sqrt(float(r))
        return out

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"QuadScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, q in self._terms:
            body = str(q) if r == 1 else (f"√{r}" if q == 1 else f"-√{r}" if q == -1 else f"{q}·√{r}")
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"terms": [{"coeff": str(q), "radicand": str(r)} for r, q in self._terms]}

    @staticmethod
    def from_json(obj: dict) -> "QuadScalar":
        raw = [(Fraction(t["coeff"]), Fraction(int(t["radicand"]))) for t in obj["terms"]]
        return quad_normalize(raw)


_ZERO = QuadScalar()
_ONE = QuadScalar(((1, Fraction(1)),))


def _as_quad(x) -> "QuadScalar":
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadScalar.from_rational(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# spec operations on QuadScalars
# ---------------------------------------------------------------------------


def quad_normalize(raw: Iterable[tuple[RationalLike, RationalLike]]) -> QuadScalar:
    """Canonicalize a sum of terms  coeff*sqrt(radicand)  with rational data.

    Each radicand must be >= 0.  sqrt(p/q) is rewritten as sqrt(p*q)/q, the
    square part of the integer radicand is pulled into the coefficient, and
    like terms are merged.
    """
    acc: dict[int, Fraction] = {}
    for coeff, radicand in raw:
        coeff = _coerce_fraction(coeff)
        radicand = _coerce_fraction(radicand)
        if radicand < 0:
            raise ImaginaryRadicalError("imaginary radical: route through CQuad")
        if radicand == 0 or coeff == 0:
            continue
        n = radicand.numerator * radicand.denominator
        s, r = squarefree_split(n)
        q = coeff * Fraction(s, radicand.denominator)
        tot = acc.get(r, Fraction(0)) + q
        if tot:
            acc[r] = tot
        else:
            acc.pop(r, None)
    return QuadScalar(sorted(acc.items()))


def quad_mul(a: QuadScalar, b: QuadScalar) -> QuadScalar:
    return a * b


def quad_is_nonneg(a: QuadScalar) -> bool:
    return a.is_nonneg()


# ---------------------------------------------------------------------------
# RadicalBasis
# ---------------------------------------------------------------------------


class RadicalBasis:
    """Pairwise-coprime squarefree generators for a set of radicands.

    Every QuadScalar radicand is a product of a subset of the basis entries,
    so the basis describes the field extension a computation lives in.
    """

    __slots__ = ("_radicands",)

    def __init__(self, radicands: Iterable[int]):
        rads = tuple(radicands)
        seen = set()
        for i, r in enumerate(rads):
            if r <= 1:
                raise ScalarError(f"radicand {r} must be > 1")
            if squarefree_split(r)[0] != 1:
                raise ScalarError(f"radicand {r} is not squarefree")
            if r in seen:
                raise ScalarError(f"duplicate radicand {r}")
            seen.add(r)
            for s in rads[:i]:
                if math.gcd(r, s) != 1:
                    raise ScalarError(f"radicands {s} and {r} are not coprime")
        if list(rads) != sorted(rads):
            raise ScalarError("radicands must be strictly increasing")
        self._radicands = rads

    @property
    def radicands(self) -> tuple[int, ...]:
        return self._radicands

    @staticmethod
    def spanning(values: Iterable[int]) -> "RadicalBasis":
        """Smallest coprime base generating all given squarefree radicands."""
        base: list[int] = []
        pending = [v for v in values if v > 1]
        while pending:
            v = pending.pop()
            for i, b in enumerate(list(base)):
                g = math.gcd(v, b)
                if g == 1:
                    continue
                if g == b:
                    v //= b
                    if v == 1:
                        break
                    continue
                base[i] = g
                base.append(b // g)
                pending.append(v // g if v % g == 0 else v)
                v = 1
                break
            else:
                if v > 1:
                    base.append(v)
        return RadicalBasis(sorted(set(base)))

    def spans(self, radicand: int) -> bool:
        v = radicand
        for b in self._radicands:
            if v % b == 0:
                v //= b
        return v == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self._radicands)

    def __repr__(self) -> str:
        return f"RadicalBasis({list(self._radicands)})"


# ---------------------------------------------------------------------------
# CQuad
# ---------------------------------------------------------------------------


class CQuad:
    """Complex number with QuadScalar real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: QuadScalar | RationalLike = 0, im: QuadScalar | RationalLike = 0):
        self.re = re if isinstance(re, QuadScalar) else QuadScalar.from_rational(re)
        self.im = im if isinstance(im, QuadScalar) else QuadScalar.from_rational(im)

    @staticmethod
    def from_rational(q: RationalLike) -> "CQuad":
        return CQuad(QuadScalar.from_rational(q))

    @staticmethod
    def i() -> "CQuad":
        return CQuad(_ZERO, _ONE)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def conj(self) -> "CQuad":
        return CQuad(self.re, -self.im)

    def abs_sq(self) -> QuadScalar:
        return self.re * self.re + self.im * self.im

    def __add__(self, other) -> "CQuad":
        other = _as_cquad(other)
        if other is NotImplemented:
            return NotImplemented
        return CQuad(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "CQuad":
        return CQuad(-self.re, -self.im)

    def __sub__(self, other) -> "CQuad":
        other = _as_cquad(other)
        if other is NotImplemented:
            return NotImplemented
        return CQuad(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "CQuad":
        return _as_cquad(other) - self

    def __mul__(self, other) -> "CQuad":
        other = _as_cquad(other)
        if other is NotImplemented:
            return NotImplemented
        return CQuad(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "CQuad":
        n = self.abs_sq()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero CQuad")
        inv = n.inverse()
        return CQuad(self.re * inv, -(self.im * inv))

    def __truediv__(self, other) -> "CQuad":
        other = _as_cquad(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CQuad":
        return _as_cquad(other) * self.inverse()

    def __eq__(self, other) -> bool:
        other = _as_cquad(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im.is_zero():
            return f"CQuad({self.re})"
        return f"CQuad({self.re}, {self.im})"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "CQuad":
        return CQuad(QuadScalar.from_json(obj["re"]), QuadScalar.from_json(obj["im"]))


def _as_cquad(x) -> "CQuad":
    if isinstance(x, CQuad):
        return x
    if isinstance(x, QuadScalar):
        return CQuad(x)
    if isinstance(x, (int, Fraction)):
        return CQuad.from_rational(x)
    return NotImplemented
