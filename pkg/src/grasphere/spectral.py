"""Factorization pipeline for the family's coefficient matrices.

The squared norm sum c_ij z^i zbar^j of a degree-d section is realized as
A * V with V the scaled power basis (sqrt(binom(d,p)) z^p), which turns the
question "which sections exist" into linear algebra on the Gram matrix
M = A^*A, congruent to the rational matrix C = (c_ij) by a positive
diagonal.  Rank decisions (and hence the zero-eigenvalue multiplicity q
that controls the ambient dimension) are always made on C in exact rational
arithmetic; the numeric Jacobi eigensolver is forced to agree.  Singular
parameters are located by exact sign bisection of det C(t), with exact-zero
probes at small-denominator rationals so rational singular points come back
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import ratlin
from .family import FamilyError, FamilyParams, SymRatMatrix, binom, build_family, coeff_c, d_denominator
from .polycore import CPoly, HoloVec, norm_sq
from .scalar import QuadScalar

__all__ = [
    "SpectralError",
    "SingularSearchError",
    "ScaledGram",
    "SpectralFactorization",
    "NumericSection",
    "scaled_gram",
    "exact_rank",
    "exact_det",
    "jacobi_eigen",
    "spectral_factorize",
    "reconstruct_section",
    "exact_section",
    "closed_form_lambda_sq",
    "closed_form_lambdas",
    "find_singular_t",
    "find_valid_t",
    "lambda_sq_numerators",
    "pair_common_zero_count",
]


class SpectralError(ValueError):
    pass


class SingularSearchError(SpectralError):
    """No zero of det C in the requested bracket."""


@dataclass(frozen=True)
class ScaledGram:
    """Numeric Gram view M plus the exact rational matrix C it is congruent to."""

    d: int
    t: Fraction
    C: SymRatMatrix
    M: tuple[tuple[float, ...], ...]


def scaled_gram(fp: FamilyParams) -> ScaledGram:
    d = fp.d
    scale = [math.sqrt(binom(d, i)) for i in range(d + 1)]
    M = tuple(
        tuple(float(fp.C[i, j]) / (scale[i] * scale[j]) for j in range(d + 1)) for i in range(d + 1)
    )
    return ScaledGram(d=d, t=fp.t, C=fp.C, M=M)


def exact_rank(C: SymRatMatrix) -> int:
    return ratlin.bareiss_rank(C.to_lists())


def exact_det(C: SymRatMatrix) -> Fraction:
    return ratlin.bareiss_det(C.to_lists())


@dataclass(frozen=True)
class SpectralFactorization:
    """Eigendecomposition M = W diag(eig) W^T with exact zero multiplicity q.

    eig is sorted descending; the q entries smallest in magnitude are zeroed
    to match the exact rank.  residual and orth_defect are max-abs errors of
    the reconstruction and of W^T W against the identity.
    """

    w: tuple[tuple[float, ...], ...]  # w[i][k] = component i of eigenvector k
    eig: tuple[float, ...]
    q: int
    residual: float
    orth_defect: float

    def lambdas(self) -> tuple[float, ...]:
        if any(e < 0 for e in self.eig):
            raise SpectralError("negative eigenvalue; no real diagonal factor")
        return tuple(math.sqrt(e) for e in self.eig)


def jacobi_eigen(
    M, tol: float = 1e-14, zero_count: int = 0
) -> SpectralFactorization:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Rotations are applied until the off-diagonal Frobenius norm falls below
    tol * ||M||.  Eigen pairs come back sorted by descending eigenvalue, each
    eigenvector scaled so its first nonzero component is positive, and the
    zero_count smallest-magnitude eigenvalues are snapped to exactly zero.
    """
    n = len(M)
    a = [[float(M[i][j]) for j in range(n)] for i in range(n)]
    frob = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n))) or 1.0
    for i in range(n):
        for j in range(i + 1, n):
            if abs(a[i][j] - a[j][i]) > 1e-12 * frob:
                raise SpectralError("matrix is not symmetric")
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for _ in range(100):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * frob:
            break
        for p in range(n - 1):
            for q_ in range(p + 1, n):
                apq = a[p][q_]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q_][q_] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q_]
                    a[k][p] = c * akp - s * akq
                    a[k][q_] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q_][k]
                    a[p][k] = c * apk - s * aqk
                    a[q_][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q_]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q_] = s * vkp + c * vkq
    pairs = sorted(
        ((a[k][k], [v[i][k] for i in range(n)]) for k in range(n)),
        key=lambda kv: -kv[0],
    )
    eig = [e for e, _ in pairs]
    cols = [vec for _, vec in pairs]
    if zero_count:
        by_mag = sorted(range(n), key=lambda k: abs(eig[k]))[:zero_count]
        for k in by_mag:
            eig[k] = 0.0
    for vec in cols:
        for x in vec:
            if abs(x) > 1e-9:
                if x < 0:
                    for i in range(n):
                        vec[i] = -vec[i]
                break
    w = tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))
    residual = max(
        abs(float(M[i][j]) - sum(w[i][k] * eig[k] * w[j][k] for k in range(n)))
        for i in range(n)
        for j in range(n)
    )
    orth = max(
        abs(sum(w[i][k] * w[i][l] for i in range(n)) - (1.0 if k == l else 0.0))
        for k in range(n)
        for l in range(n)
    )
    return SpectralFactorization(w=w, eig=tuple(eig), q=zero_count, residual=residual, orth_defect=orth)


def spectral_factorize(gram: ScaledGram, tol: float = 1e-14) -> SpectralFactorization:
    """Jacobi factorization with q injected from the exact rational rank."""
    q = gram.C.size - exact_rank(gram.C)
    return jacobi_eigen(gram.M, tol=tol, zero_count=q)


@dataclass(frozen=True)
class NumericSection:
    """Floating-point section rows; row k holds the z-power coefficients."""

    rows: tuple[tuple[float, ...], ...]

    def eval_row(self, k: int, z: complex) -> complex:
        out = 0j
        for c in reversed(self.rows[k]):
            out = out * z + c
        return out

    def norm_sq_at(self, z: complex) -> float:
        return sum(abs(self.eval_row(k, z)) ** 2 for k in range(len(self.rows)))


def reconstruct_section(
    fp: FamilyParams, fact: Optional[SpectralFactorization] = None, max_residual: float = 1e-10
) -> NumericSection:
    """Numeric section D W^T V with the q zero rows dropped (ambient unitary
    fixed to the identity).  The squared norm is checked against the exact
    coefficients on a 7x7 grid with |z| <= 2."""
    gram = scaled_gram(fp)
    if fact is None:
        fact = spectral_factorize(gram)
    if fact.residual > max_residual:
        raise SpectralError(f"factorization residual {fact.residual:.3e} too large")
    if any(e < 0 for e in fact.eig):
        raise SpectralError("indefinite coefficient matrix; no real section")
    d = fp.d
    n = d + 1
    scale = [math.sqrt(binom(d, p)) for p in range(n)]
    rows = []
    for k in range(n):
        if fact.eig[k] == 0.0:
            continue
        lam = math.sqrt(fact.eig[k])
        rows.append(tuple(lam * fact.w[p][k] * scale[p] for p in range(n)))
    section = NumericSection(rows=tuple(rows))
    ticks = [-1.4 + 2.8 * k / 6 for k in range(7)]
    for x in ticks:
        for y in ticks:
            z = complex(x, y)
            want = sum(
                float(fp.C[i, j]) * (z**i) * (z.conjugate() ** j)
                for i in range(n)
                for j in range(n)
            ).real
            got = section.norm_sq_at(z)
            if abs(got - want) > 1e-9 * max(1.0, abs(want)):
                raise SpectralError(f"norm mismatch {abs(got - want):.3e} at z={z}")
    return section


def exact_section(fp: FamilyParams) -> HoloVec:
    """Exact section with |g|^2 = sum c_ij z^i zbar^j, built from the pivoted
    rational LDL^T factorization: row k is sqrt(d_k) times a rational
    polynomial, so every entry stays in the radical field.  The number of
    rows is the exact rank of C."""
    ok, factors = ratlin.psd_factor(fp.C.to_lists())
    if not ok:
        raise FamilyError(f"coefficient matrix not PSD at t={fp.t}; no real section")
    entries = []
    for dk, u in factors:
        root = QuadScalar.sqrt_rational(dk)
        entries.append(CPoly([root * ui for ui in u]))
    g = HoloVec(entries)
    if norm_sq(g) != fp.fn3_norm_sq():
        raise ArithmeticError("exact section fails to reproduce the coefficient matrix")
    return g


# ---------------------------------------------------------------------------
# closed forms for d = 2, 3, 4
# ---------------------------------------------------------------------------


def _poly(*coeffs: int):
    return list(map(Fraction, coeffs))


def lambda_sq_numerators(d: int) -> Optional[list[tuple[list[Fraction], Fraction]]]:
    """(numerator coefficients in t, rational prefactor) of each lambda^2*D(t),
    descending eigenvalue order; None outside d in {2, 3, 4}."""
    if d == 2:
        return [
            (_poly(1, -2, 1), Fraction(1)),
            (_poly(1, -3, 2), Fraction(1)),
            (_poly(1, -4, 7), Fraction(1)),
        ]
    if d == 3:
        return [
            (_poly(1, -3, 3, -1), Fraction(1)),
            (_poly(3, -11, 13, -5), Fraction(1, 3)),
            (_poly(3, -13, 21, -11), Fraction(1, 3)),
            (_poly(1, -5, 11, -15), Fraction(1)),
        ]
    if d == 4:
        return [
            (_poly(1, -4, 6, -4, 1), Fraction(1)),
            (_poly(2, -9, 15, -11, 3), Fraction(1, 2)),
            (_poly(3, -15, 29, -25, 8), Fraction(1, 3)),
            (_poly(2, -11, 25, -29, 13), Fraction(1, 2)),
            (_poly(1, -6, 16, -26, 31), Fraction(1)),
        ]
    return None


def closed_form_lambda_sq(d: int, t: Fraction) -> Optional[list[Fraction]]:
    nums = lambda_sq_numerators(d)
    if nums is None:
        return None
    den = d_denominator(d, Fraction(t))
    if den == 0:
        raise FamilyError(f"denominator vanishes at t={t}")
    return [pref * ratlin.poly_eval(coeffs, Fraction(t)) / den for coeffs, pref in nums]


def closed_form_lambdas(d: int, t: Fraction) -> Optional[list[QuadScalar]]:
    sq = closed_form_lambda_sq(d, t)
    if sq is None:
        return None
    return [QuadScalar.sqrt_rational(v) for v in sq]


def pair_common_zero_count(d: int, lo: Fraction, hi: Fraction) -> int:
    """Number of parameters in the open interval (lo, hi) where two
    eigenvalues vanish together, via pairwise gcds of the closed-form
    numerators (exact Sturm counting)."""
    nums = lambda_sq_numerators(d)
    if nums is None:
        raise SpectralError(f"no closed forms for d={d}")
    count = 0
    for a in range(len(nums)):
        for b in range(a + 1, len(nums)):
            g = ratlin.poly_gcd(nums[a][0], nums[b][0])
            if len(g) > 1:
                c = ratlin.sturm_root_count(g, lo, hi)
                if ratlin.poly_eval(g, hi) == 0:
                    c -= 1
                count += c
    return count


# ---------------------------------------------------------------------------
# singular-parameter search
# ---------------------------------------------------------------------------


def _det_c(d: int, t: Fraction) -> Optional[Fraction]:
    if d_denominator(d, t) == 0:
        return None
    rows = [[coeff_c(d, i, j, t) for j in range(d + 1)] for i in range(d + 1)]
    return ratlin.bareiss_det(rows)


def find_singular_t(
    d: int,
    lo: Fraction,
    hi: Fraction,
    width: Fraction = Fraction(1, 10**14),
    probe_denominator: int = 64,
) -> Fraction:
    """A zero of det C(d, .) in the open interval (lo, hi).

    Small-denominator rationals are probed first so exact singular values
    come back exact; otherwise the sign change of the exact determinant is
    bisected down to the requested width and the midpoint returned.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise SpectralError("empty bracket")
    for q in range(1, probe_denominator + 1):
        p_lo = math.floor(lo * q) + 1
        p_hi = math.ceil(hi * q) - 1
        for p in range(p_lo, p_hi + 1):
            if math.gcd(p, q) != 1:
                continue
            t = Fraction(p, q)
            if not lo < t < hi:
                continue
            if _det_c(d, t) == 0:
                return t

    step = (hi - lo) / 1024

    def inward_sign(t: Fraction, direction: Fraction) -> tuple[Fraction, int]:
        while True:
            v = _det_c(d, t)
            if v is not None and v != 0:
                return t, (1 if v > 0 else -1)
            t += direction
            if not lo <= t <= hi:
                raise SingularSearchError("determinant degenerate across the bracket")

    a, sa = inward_sign(lo, step)
    b, sb = inward_sign(hi, -step)
    if sa == sb:
        raise SingularSearchError(f"no sign change of det C({d}, t) on ({lo}, {hi})")
    while b - a > width:
        mid = (a + b) / 2
        v = _det_c(d, mid)
        if v == 0:
            return mid
        if v is None or (1 if v > 0 else -1) == sa:
            a = mid
        else:
            b = mid
    return (a + b) / 2


def find_valid_t(d: int, max_denominator: int = 60) -> Fraction:
    """Some rational t != 0 with a valid family of full rank (the nonempty
    parameter-set scan); small denominators are tried first."""
    for q in range(2, max_denominator + 1):
        for t in (Fraction(-1, q), Fraction(1, q)):
            if d_denominator(d, t) == 0:
                continue
            fp = build_family(d, t)
            if fp.valid and exact_rank(fp.C) == d + 1:
                return t
    raise SpectralError(f"no valid full-rank parameter found for d={d}")
