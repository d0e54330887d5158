"""The closed-form coefficient family and its defining identities.

For a degree parameter d >= 2 and a rational t in (-1, 1) the family fixes

    |f1|^2  = 1 + t z + t zbar + z zbar            (the line factor)
    |g|^2   = sum c_ij(t) z^i zbar^j               (the big factor)
    h       = +/- sqrt(a0) (1+z)^(d+1),  a0 = (-1)^(d+1) t^(d+1) / D(t)

with D(t) = sum_p (-1)^p C(d+1,p) t^p and the c_ij given by an explicit
double binomial sum over D(t).  These data satisfy

    |f1|^2 |g|^2 + |h|^2 = c (1 + z zbar)^(d+1),   c = 1 + a0,

which this module verifies two independent ways: coefficient recurrences in
exact rational arithmetic, and full polynomial expansion with an exact
proportionality test.  A parameter is *valid* (produces a real curve) iff
a0 >= 0 and the coefficient matrix C is positive semidefinite, both decided
exactly; invalid parameters still satisfy the identities formally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import ratlin
from .polycore import BiPoly, CPoly, PolyError, cpoly_abs_sq, is_proportional, one_plus_zzbar
from .scalar import QuadScalar

__all__ = [
    "FamilyError",
    "DenominatorZeroError",
    "SymRatMatrix",
    "FamilyParams",
    "d_denominator",
    "coeff_c",
    "coeff_alpha_product",
    "build_family",
    "verify_identity_11",
    "verify_eq_42_43",
]


class FamilyError(ValueError):
    pass


class DenominatorZeroError(FamilyError):
    """The defining denominator D(t) vanishes at this parameter."""


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class SymRatMatrix:
    """Immutable symmetric matrix of exact rationals."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[Fraction]]):
        mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(mat)
        for row in mat:
            if len(row) != n:
                raise FamilyError("matrix is not square")
        for i in range(n):
            for j in range(i):
                if mat[i][j] != mat[j][i]:
                    raise FamilyError(f"matrix not symmetric at ({i},{j})")
        self._rows = mat

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self._rows[ij[0]][ij[1]]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymRatMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"SymRatMatrix({[list(map(str, r)) for r in self._rows]})"


def d_denominator(d: int, t: Fraction) -> Fraction:
    return sum(Fraction(-1) ** p * binom(d + 1, p) * t**p for p in range(d + 1))


def _c_numerator(d: int, i: int, j: int, t: Fraction) -> Fraction:
    # i >= j here; the inner binomials vanish outside max(0, i+j-d) <= k <= j
    total = Fraction(0)
    for p in range(i - j, d + 1):
        inner = 0
        for k in range(max(0, i + j - d), j + 1):
            inner += binom(i + j - 2 * k, j - k) * binom(d - i - j + 2 * k, k) * binom(d + 1, p - i - j + 2 * k)
        if inner:
            total += Fraction(-1) ** p * t**p * inner
    return total


def coeff_c(d: int, i: int, j: int, t: Fraction) -> Fraction:
    """c_ij(t), extended by the symmetries c_ij = c_ji = c_{d-i,d-j}."""
    if not (0 <= i <= d and 0 <= j <= d):
        raise FamilyError(f"indices ({i},{j}) out of range for d={d}")
    den = d_denominator(d, t)
    if den == 0:
        raise DenominatorZeroError(f"denominator vanishes at t={t}")
    if i < j:
        i, j = j, i
    return _c_numerator(d, i, j, t) / den


def coeff_alpha_product(d: int, i: int, j: int, t: Fraction) -> Fraction:
    """The formal product alpha_i * alpha_j, a rational number of either sign."""
    if not (0 <= i <= d + 1 and 0 <= j <= d + 1):
        raise FamilyError(f"indices ({i},{j}) out of range for d={d}")
    den = d_denominator(d, t)
    if den == 0:
        raise DenominatorZeroError(f"denominator vanishes at t={t}")
    return Fraction(-1) ** (d + 1) * binom(d + 1, i) * binom(d + 1, j) * t ** (d + 1) / den


@dataclass(frozen=True)
class FamilyParams:
    """One member of the coefficient family, with validity decided exactly."""

    d: int
    t: Fraction
    sign: int
    C: SymRatMatrix
    alpha_scale: Fraction  # alpha_0^2, may be negative (then invalid)
    c: Fraction  # 1 + alpha_0^2
    c0: QuadScalar  # sqrt(1 - t^2)
    d_denom: Fraction
    psd: bool
    valid: bool

    def f1_norm_sq(self) -> BiPoly:
        return BiPoly([[1, self.t], [self.t, 1]])

    def fn3_norm_sq(self) -> BiPoly:
        return BiPoly(self.C.to_lists())

    def h_sq_formal(self) -> BiPoly:
        """alpha_scale * (1+z)^(d+1) (1+zbar)^(d+1); the formal |h|^2 term."""
        onez = CPoly([1, 1])
        p = CPoly.one()
        for _ in range(self.d + 1):
            p = p * onez
        return cpoly_abs_sq(p) * self.alpha_scale

    def alpha(self, i: int) -> QuadScalar:
        if self.alpha_scale < 0:
            raise FamilyError("alpha coefficients are imaginary for this parameter")
        return QuadScalar.sqrt_rational(self.alpha_scale) * (self.sign * binom(self.d + 1, i))

    def h_poly(self) -> CPoly:
        """h = sign * sqrt(alpha_scale) * (1+z)^(d+1), exact radical coefficients."""
        s = QuadScalar.sqrt_rational(self.alpha_scale) * self.sign
        coeffs = [s * binom(self.d + 1, i) for i in range(self.d + 2)]
        return CPoly(coeffs)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "t": str(self.t),
            "sign": self.sign,
            "valid": self.valid,
            "psd": self.psd,
            "alpha_scale": str(self.alpha_scale),
            "c": str(self.c),
            "c0": self.c0.to_json(),
            "d_denom": str(self.d_denom),
            "C": [[str(x) for x in row] for row in self.C.rows],
        }

    @staticmethod
    def from_json(obj: dict) -> "FamilyParams":
        fp = build_family(int(obj["d"]), Fraction(obj["t"]), int(obj["sign"]))
        if [[str(x) for x in row] for row in fp.C.rows] != obj["C"]:
            raise FamilyError("serialized coefficient matrix disagrees with its parameters")
        return fp


def build_family(d: int, t: Fraction, sign: int = 1) -> FamilyParams:
    if d < 2:
        raise FamilyError("family needs d >= 2")
    if not -1 < t < 1:
        raise FamilyError(f"t={t} outside (-1, 1)")
    if sign not in (1, -1):
        raise FamilyError("sign must be +1 or -1")
    t = Fraction(t)
    den = d_denominator(d, t)
    if den == 0:
        raise DenominatorZeroError(f"denominator vanishes at t={t}")
    C = SymRatMatrix([[coeff_c(d, i, j, t) for j in range(d + 1)] for i in range(d + 1)])
    alpha_scale = coeff_alpha_product(d, 0, 0, t)
    psd, _ = ratlin.psd_factor(C.to_lists())
    return FamilyParams(
        d=d,
        t=t,
        sign=sign,
        C=C,
        alpha_scale=alpha_scale,
        c=1 + alpha_scale,
        c0=QuadScalar.sqrt_rational(1 - t * t),
        d_denom=den,
        psd=psd,
        valid=psd and alpha_scale >= 0,
    )


def verify_identity_11(fp: FamilyParams) -> tuple[bool, Fraction]:
    """Expand |f1|^2 |g|^2 + |h|^2 and test exact proportionality to
    (1+z*zbar)^(d+1); returns (holds, c).  Runs formally on invalid
    parameters too (|h|^2 taken as the signed rank-one term)."""
    lhs = fp.f1_norm_sq() * fp.fn3_norm_sq() + fp.h_sq_formal()
    lam = is_proportional(lhs, one_plus_zzbar(fp.d + 1))
    if lam is None or not lam.is_rational():
        return False, Fraction(0)
    return lam.as_fraction() == fp.c, lam.as_fraction()


def _eq_42_43_residuals(
    d: int, t: Fraction, c_lookup: Callable[[int, int], Fraction]
) -> list[Fraction]:
    """Left-hand sides of the coefficient recurrences; all must vanish.

    Boundary convention c_{-1,j} = c_{d+1,j} = 0, with c = 1 + alpha_0^2 and
    the alpha products taken as their formal rational values.
    """

    def c_at(i: int, j: int) -> Fraction:
        if 0 <= i <= d and 0 <= j <= d:
            return c_lookup(i, j)
        return Fraction(0)

    cc = 1 + coeff_alpha_product(d, 0, 0, t)
    out = []
    for i in range(d + 2):
        out.append(
            c_at(i, i)
            + 2 * t * c_at(i, i - 1)
            + c_at(i - 1, i - 1)
            + coeff_alpha_product(d, i, i, t)
            - cc * binom(d + 1, i)
        )
    for i in range(d + 2):
        for j in range(i):
            out.append(
                c_at(i, j)
                + t * c_at(i - 1, j)
                + t * c_at(i, j - 1)
                + c_at(i - 1, j - 1)
                + coeff_alpha_product(d, i, j, t)
            )
    return out


def verify_eq_42_43(d: int, t: Fraction) -> bool:
    """Exact check of the diagonal and off-diagonal coefficient recurrences."""
    t = Fraction(t)
    if d_denominator(d, t) == 0:
        raise DenominatorZeroError(f"denominator vanishes at t={t}")
    return all(r == 0 for r in _eq_42_43_residuals(d, t, lambda i, j: coeff_c(d, i, j, t)))
