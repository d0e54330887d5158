"""Harmonic-sequence machinery for curves in complex projective space.

Osculating towers F_p = f0 ^ df0 ^ ... ^ d^p f0 with their zero divisors
factored out, the degree/ramification bookkeeping tied together by the
global Pluecker formula, the exact l-sequence, the closed-form invariants
of the rational normal (Veronese) curves, and the one-step recursion that
produces the next member of a harmonic sequence as an explicit quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polycore import (
    BiPoly,
    CPoly,
    HoloVec,
    PolyError,
    RatBiFunc,
    bipoly_gcd,
    content_and_primitive,
    cpoly_abs_sq,
    norm_sq,
    osculating_wedges,
)
from .scalar import QuadScalar

__all__ = [
    "OsculatingTower",
    "SequenceInvariants",
    "QuotVec",
    "veronese",
    "osculating_tower",
    "sequence_invariants",
    "ell_sequence",
    "veronese_invariants",
    "harmonic_next",
    "harmonic_sequence",
]


def veronese(m: int) -> HoloVec:
    """The degree-m rational normal curve with |V|^2 = (1+z*zbar)^m."""
    if m <= 0:
        raise PolyError("veronese needs m >= 1")
    return HoloVec([CPoly.monomial(p, QuadScalar.sqrt_rational(math.comb(m, p))) for p in range(m + 1)])


@dataclass(frozen=True)
class OsculatingTower:
    """Wedge tower of a holomorphic curve, content-factored level by level.

    F[p] = f0 ^ df0 ^ ... ^ d^p f0 = h_poly[p] * F_tilde[p] with F_tilde[p]
    entry-coprime; the tower stops at the first identically-zero wedge, so
    len(F) - 1 is the dimension of the smallest projective space the curve
    is full in.
    """

    f0: HoloVec
    F: tuple[HoloVec, ...]
    h_poly: tuple[CPoly, ...]
    F_tilde: tuple[HoloVec, ...]
    norm_sq: tuple[BiPoly, ...]

    @property
    def m(self) -> int:
        """Ambient projective dimension of f0."""
        return self.f0.ambient_dim - 1

    @property
    def full_in(self) -> int:
        """The curve is linearly full in CP^full_in."""
        return len(self.F) - 1

    @property
    def is_full(self) -> bool:
        return self.full_in == self.m


def osculating_tower(f0: HoloVec, max_p: Optional[int] = None) -> OsculatingTower:
    if f0.is_zero():
        raise PolyError("osculating tower of the zero section")
    m = f0.ambient_dim - 1
    top = m if max_p is None else min(max_p, m)
    rows = [f0]
    for _ in range(top):
        rows.append(rows[-1].dz())
    wedges = osculating_wedges(rows, top)
    F: list[HoloVec] = []
    h: list[CPoly] = []
    Ft: list[HoloVec] = []
    ns: list[BiPoly] = []
    for w in wedges:
        if w.is_zero():
            break
        g, prim = content_and_primitive(w)
        F.append(w)
        h.append(g)
        Ft.append(prim)
        ns.append(norm_sq(prim))
    return OsculatingTower(f0=f0, F=tuple(F), h_poly=tuple(h), F_tilde=tuple(Ft), norm_sq=tuple(ns))


@dataclass(frozen=True)
class SequenceInvariants:
    """Degrees, ramification degrees and the exact l-sequence, p = 0..m-1."""

    deltas: tuple[int, ...]
    ramifications: tuple[int, ...]
    ells: tuple[RatBiFunc, ...]


def _root_order_at_zero(p: CPoly) -> int:
    for k, c in enumerate(p.coeffs):
        if not c.is_zero():
            return k
    return 0


def sequence_invariants(tower: OsculatingTower) -> SequenceInvariants:
    """Degrees delta_p, ramifications r_p and l_p for a linearly full tower.

    r_p is computed twice: from the divisor data (finite zero orders of the
    h factors plus the orders at infinity read off the reversed curve's
    tower) and from the Pluecker identity on the degrees.  A mismatch means
    the tower bookkeeping is corrupt and raises.
    """
    if not tower.is_full:
        raise PolyError(f"curve is full only in CP^{tower.full_in} < CP^{tower.m}")
    m = tower.m
    deltas_full = [ns.deg_z for ns in tower.norm_sq]  # p = 0..m, deltas_full[m] == 0

    rev_deg = tower.f0.max_degree()
    reversed_f0 = HoloVec([e.reversed(rev_deg) for e in tower.f0])
    rev_tower = osculating_tower(reversed_f0)
    if rev_tower.full_in != m:
        raise PolyError("reversed curve lost fullness; inconsistent tower")

    def fin(p: int) -> int:
        return tower.h_poly[p].degree if 0 <= p <= m else 0

    def inf(p: int) -> int:
        return _root_order_at_zero(rev_tower.h_poly[p]) if 0 <= p <= m else 0

    def delta(p: int) -> int:
        return deltas_full[p] if 0 <= p <= m else 0

    rams = []
    for p in range(m):
        by_divisor = (fin(p - 1) + fin(p + 1) - 2 * fin(p)) + (inf(p - 1) + inf(p + 1) - 2 * inf(p))
        by_plucker = 2 * delta(p) - delta(p - 1) - delta(p + 1) - 2
        if by_divisor != by_plucker:
            raise ArithmeticError(
                f"ramification cross-check failed at p={p}: divisor {by_divisor} vs Pluecker {by_plucker}"
            )
        if by_plucker < 0:
            raise ArithmeticError(f"negative ramification r_{p} = {by_plucker}")
        rams.append(by_plucker)

    return SequenceInvariants(
        deltas=tuple(deltas_full[:m]),
        ramifications=tuple(rams),
        ells=ell_sequence(tower),
    )


def _full_norm_sq(tower: OsculatingTower, p: int) -> BiPoly:
    """|F_p|^2 with the factored-out zero divisor reinstated; |F_-1|^2 = 1."""
    if p < 0:
        return BiPoly.one()
    return cpoly_abs_sq(tower.h_poly[p]) * tower.norm_sq[p]


def ell_sequence(tower: OsculatingTower) -> tuple[RatBiFunc, ...]:
    """l_p = |F_{p-1}|^2 |F_{p+1}|^2 / |F_p|^4 for p = 0..top-1, exact.

    Each value is cross-checked against d^2/(dz dzbar) log |F_p|^2; both
    sides share the denominator |F_p|^4, so the check is a polynomial
    identity and needs no gcd work.
    """
    ells = []
    for p in range(len(tower.F) - 1):
        P = _full_norm_sq(tower, p)
        A = _full_norm_sq(tower, p - 1)
        B = _full_norm_sq(tower, p + 1)
        Pz = P.dz_h()
        if P * Pz.dzbar_h() - Pz * P.dzbar_h() != A * B:
            raise ArithmeticError(f"log-laplacian identity failed for |F_{p}|^2")
        ells.append(RatBiFunc(A * B, P * P))
    return tuple(ells)


def veronese_invariants(m: int, i: int) -> tuple[Fraction, Fraction]:
    """(curvature, cosine of the Kaehler angle) of the i-th Veronese member."""
    if not 0 <= i <= m:
        raise PolyError(f"index {i} out of range for CP^{m}")
    den = m + 2 * i * (m - i)
    return Fraction(4, den), Fraction(m - 2 * i, den)


# ---------------------------------------------------------------------------
# the harmonic recursion f_i = d f_{i-1} - (d log |f_{i-1}|^2) f_{i-1}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotVec:
    """Vector of bivariate polynomials over a common Hermitian denominator."""

    num: tuple[BiPoly, ...]
    den: BiPoly

    @staticmethod
    def from_holovec(v: HoloVec) -> "QuotVec":
        return QuotVec(tuple(BiPoly.from_holomorphic(e) for e in v), BiPoly.one())

    def norm_sq_num(self) -> BiPoly:
        out = BiPoly.zero()
        for n in self.num:
            out = out + n * n.conj()
        return out

    def norm_sq(self) -> RatBiFunc:
        return RatBiFunc(self.norm_sq_num(), self.den * self.den)


def harmonic_next(f_prev: QuotVec, norm_prev: Optional[RatBiFunc] = None) -> QuotVec:
    """One step of the harmonic-sequence recursion, as an explicit quotient.

    With f = N/D and S = sum N_a conj(N_a) the next section is
    (S D dN_a + (S dD - D dS) N_a) / (S D^2); the common bivariate content
    is stripped afterwards.
    """
    S = f_prev.norm_sq_num()
    if S.is_zero():
        raise PolyError("harmonic step on a zero-norm section")
    if norm_prev is not None and norm_prev != f_prev.norm_sq():
        raise PolyError("norm_prev disagrees with |f_prev|^2")
    D = f_prev.den
    coef_dn = S * D
    coef_n = S * D.dz_h() - D * S.dz_h()
    num = [coef_dn * n.dz_h() + coef_n * n for n in f_prev.num]
    den = S * D * D
    g = den
    for n in num:
        if g.is_constant():
            break
        g = bipoly_gcd(g, n)
    if not g.is_constant():
        num = [n.exact_div(g) for n in num]
        den = den.exact_div(g)
    return QuotVec(tuple(num), den)


def harmonic_sequence(f0: HoloVec, steps: int) -> list[QuotVec]:
    """f0, f1, ..., f_steps with the norm identity |f_p|^2 = |F_p|^2/|F_{p-1}|^2
    verified exactly at every step against the osculating tower."""
    tower = osculating_tower(f0, max_p=steps)
    if len(tower.F) <= steps:
        raise PolyError("curve not full enough for the requested number of steps")
    seq = [QuotVec.from_holovec(f0)]
    for p in range(1, steps + 1):
        nxt = harmonic_next(seq[-1])
        expected = RatBiFunc(_full_norm_sq(tower, p), _full_norm_sq(tower, p - 1))
        if nxt.norm_sq() != expected:
            raise ArithmeticError(f"norm telescoping identity failed at step {p}")
        seq.append(nxt)
    return seq
