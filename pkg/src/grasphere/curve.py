"""Curves in G(2,n) spanned by two polynomial sections, fully verified.

A family member (d, t) produces the span of

    v1 = (sqrt((1-t)/2)(1-z), sqrt((1+t)/2)(1+z), 0, ..., 0)
    v2 = h * dv1/dz  (+)  c0 * g   embedded in the last n-2 coordinates,

where g is the exact section of the big factor and h the radical multiple
of (1+z)^(d+1).  The wedge norm then collapses to
|v1 ^ v2|^2 = c0^2 (|h|^2 + |v1|^2 |g|^2) = c0^2 c (1+z*zbar)^(d+1), so
constant curvature 4/(d+1) is decided by one exact proportionality test.
Linear fullness is an exact rank over the radical field, ramification and
the |det A_1| invariant come from the section's first osculating wedge, and
the squared length of the second fundamental form follows from the Gauss
equation K = 4 - 8|det A_1|^2 - S/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import ratlin
from .family import FamilyError, FamilyParams
from .harmonic import osculating_tower
from .polycore import (
    BiPoly,
    CPoly,
    HoloVec,
    PolyError,
    RatBiFunc,
    content_and_primitive,
    is_proportional,
    log_laplacian,
    norm_sq,
    one_plus_zzbar,
    wedge,
)
from .scalar import CQuad, QuadScalar
from .spectral import exact_section

__all__ = [
    "CurveError",
    "InvalidFamilyError",
    "DegenerateMetricError",
    "GrassCurve",
    "GaussResult",
    "CurveReport",
    "build_curve",
    "plucker_norm_sq",
    "gauss_curvature",
    "linear_fullness",
    "unramified_check",
    "det_a1_sq",
    "second_ff",
    "build_report",
    "curve_to_json",
    "curve_from_json",
    "report_to_json",
]


class CurveError(ValueError):
    pass


class InvalidFamilyError(CurveError):
    """The parameter does not admit a real curve (negative alpha^2 or non-PSD)."""


class DegenerateMetricError(CurveError):
    pass


@dataclass(frozen=True)
class GrassCurve:
    n: int
    v1: HoloVec
    v2: HoloVec
    meta: Optional[FamilyParams] = None

    def __post_init__(self):
        if self.v1.ambient_dim != self.n or self.v2.ambient_dim != self.n:
            raise CurveError("section length disagrees with ambient dimension")
        if wedge(self.v1, self.v2).is_zero():
            raise CurveError("spanning sections are proportional; not a 2-plane")


def build_curve(fp: FamilyParams, n: Optional[int] = None) -> GrassCurve:
    """The curve of a valid family member; n defaults to rank(C) + 2."""
    if not fp.valid:
        raise InvalidFamilyError(
            f"family at d={fp.d}, t={fp.t} is invalid "
            f"(alpha^2 = {fp.alpha_scale}, PSD = {fp.psd})"
        )
    g = exact_section(fp)
    rank = g.ambient_dim
    expected = rank + 2
    if n is None:
        n = expected
    elif n != expected:
        raise CurveError(f"n={n} inconsistent with zero multiplicity q={fp.d + 1 - rank}")
    a = QuadScalar.sqrt_rational(Fraction(1 - fp.t, 2))
    b = QuadScalar.sqrt_rational(Fraction(1 + fp.t, 2))
    zero = CPoly.zero()
    f1 = CPoly([a, -a])
    f2 = CPoly([b, b])
    v1 = HoloVec([f1, f2] + [zero] * (n - 2))
    h = fp.h_poly()
    v2 = HoloVec([h * (-a), h * b] + [e * fp.c0 for e in g])
    return GrassCurve(n=n, v1=v1, v2=v2, meta=fp)


def plucker_norm_sq(curve: GrassCurve) -> BiPoly:
    """|v1 ^ v2|^2 as an exact Hermitian polynomial."""
    w = wedge(curve.v1, curve.v2)
    if w.is_zero():
        raise CurveError("identically zero wedge")
    return norm_sq(w)


@dataclass(frozen=True)
class GaussResult:
    K: Optional[Fraction]  # constant curvature value when constant
    plucker_c: Optional[QuadScalar]  # constant in |w|^2 = c (1+z*zbar)^deg
    deg: int  # z-degree of |w|^2 (degree of the Pluecker image)
    K_func: RatBiFunc  # the curvature as an exact rational function


def gauss_curvature(curve: GrassCurve) -> GaussResult:
    """Curvature of the induced metric, decided exactly.

    The proportionality |w|^2 = const * (1+z*zbar)^deg settles the constant
    case directly (K = 4/deg); otherwise the curvature is assembled as
    -2 (d^2 log lambda / dz dzbar) / lambda with lambda the metric density
    d^2 log|w|^2 / dz dzbar, and constancy tested on the result.
    """
    w2 = plucker_norm_sq(curve)
    deg = w2.deg_z
    if deg == 0:
        raise DegenerateMetricError("constant wedge norm; the map is a single point")
    lam = is_proportional(w2, one_plus_zzbar(deg))
    if lam is not None and lam.sign() > 0:
        K = Fraction(4, deg)
        return GaussResult(K=K, plucker_c=lam, deg=deg, K_func=RatBiFunc.constant(K))
    metric = log_laplacian(w2)
    if metric.is_zero():
        raise DegenerateMetricError("identically flat degenerate metric")
    dd_log = log_laplacian(metric.num) - log_laplacian(metric.den)
    k_func = (dd_log * (-2)) / metric
    value = k_func.is_constant()
    K = None
    if value is not None and value.is_rational():
        K = value.as_fraction()
    return GaussResult(K=K, plucker_c=None, deg=deg, K_func=k_func)


def linear_fullness(curve: GrassCurve) -> int:
    """Rank over the scalar field of all coefficient vectors of v1 and v2."""
    rows = []
    for v in (curve.v1, curve.v2):
        for k in range(v.max_degree() + 1):
            rows.append([v[i][k] for i in range(curve.n)])
    return ratlin.field_rank(
        rows,
        is_zero=lambda c: c.is_zero(),
        divide=lambda x, y: x / y,
    )


def _require_meta(curve: GrassCurve) -> FamilyParams:
    if curve.meta is None:
        raise CurveError("operation needs family metadata")
    return curve.meta


@lru_cache(maxsize=128)
def _section_first_wedge(fp: FamilyParams) -> tuple[HoloVec, HoloVec]:
    g = exact_section(fp)
    return g, wedge(g, g.dz())


def unramified_check(curve: GrassCurve) -> bool:
    """True iff the ramification data of the generated harmonic sequence is
    trivial: the line factor contributes |f|^2 |f_1|^2 = 1 - t^2 > 0
    automatically, so the decision rests on the big section having r_0 = 0,
    i.e. its first osculating wedge has trivial content (no finite zeros of
    the metric l_0) and full degree 2*deg(g) - 2 (no zero at infinity)."""
    fp = _require_meta(curve)
    g, F1 = _section_first_wedge(fp)
    if F1.is_zero():
        return False
    content, _ = content_and_primitive(F1)
    if content.degree > 0:
        return False
    return F1.max_degree() == 2 * g.max_degree() - 2


def det_a1_sq(curve: GrassCurve) -> tuple[RatBiFunc, bool]:
    """|det A_1|^2 as an exact rational function, with a nowhere-zero flag.

    |det A_1| = |u_23|^2 sqrt(l_0^(1) l_0^(big)) (1+z*zbar)^2/(d+1) with
    |u_23|^2 = |f|^2|g|^2 / (c (1+z*zbar)^(d+1)), l_0^(1) = c_0^2/|f|^4 and
    l_0^(big) = |g ^ g'|^2/|g|^4, which collapses to
    c_0^2 |g ^ g'|^2 / (c^2 (d+1)^2 (1+z*zbar)^(2d-2)).
    """
    fp = _require_meta(curve)
    d = fp.d
    g, F1 = _section_first_wedge(fp)
    g1_sq = norm_sq(F1)
    c0_sq = Fraction(1) - fp.t * fp.t
    num = g1_sq * c0_sq
    den = one_plus_zzbar(2 * d - 2) * (fp.c * fp.c * (d + 1) * (d + 1))
    value = RatBiFunc(num, den)
    nowhere_zero = (
        not F1.is_zero()
        and content_and_primitive(F1)[0].degree == 0
        and F1.max_degree() == 2 * g.max_degree() - 2
    )
    return value, nowhere_zero


def second_ff(
    curve: GrassCurve,
    gauss: Optional[GaussResult] = None,
    det: Optional[RatBiFunc] = None,
) -> tuple[RatBiFunc, bool]:
    """Squared length of the second fundamental form via the Gauss equation
    S = 2(4 - K - 8 |det A_1|^2); requires constant curvature."""
    if gauss is None:
        gauss = gauss_curvature(curve)
    if gauss.K is None:
        raise CurveError("second fundamental form needs constant curvature")
    if det is None:
        det, _ = det_a1_sq(curve)
    s = RatBiFunc.constant(2 * (4 - gauss.K)) - det * 16
    return s, s.is_constant() is not None


@dataclass(frozen=True)
class CurveReport:
    """Verification certificate of one curve."""

    K: Optional[Fraction]
    plucker_c: Optional[QuadScalar]
    full_in: int
    deg: int
    unramified: Optional[bool]
    det_a1: Optional[RatBiFunc]
    det_a1_nowhere_zero: Optional[bool]
    S: Optional[RatBiFunc]
    S_constant: Optional[bool]
    warnings: tuple[str, ...] = ()


def build_report(curve: GrassCurve) -> CurveReport:
    gauss = gauss_curvature(curve)
    full = linear_fullness(curve)
    warnings: list[str] = []
    if gauss.K is None:
        warnings.append("curvature is not constant")
    unram = det = nz = s = s_const = None
    if curve.meta is None:
        warnings.append("no family metadata: ramification, |det A_1| and S checks skipped")
    else:
        unram = unramified_check(curve)
        det, nz = det_a1_sq(curve)
        if gauss.K is not None:
            s, s_const = second_ff(curve, gauss, det)
    return CurveReport(
        K=gauss.K,
        plucker_c=gauss.plucker_c,
        full_in=full,
        deg=gauss.deg,
        unramified=unram,
        det_a1=det,
        det_a1_nowhere_zero=nz,
        S=s,
        S_constant=s_const,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def curve_to_json(curve: GrassCurve) -> dict:
    return {
        "n": curve.n,
        "v1": curve.v1.to_json(),
        "v2": curve.v2.to_json(),
        "meta": curve.meta.to_json() if curve.meta else None,
    }


def curve_from_json(obj: dict) -> GrassCurve:
    meta = FamilyParams.from_json(obj["meta"]) if obj.get("meta") else None
    return GrassCurve(
        n=int(obj["n"]),
        v1=HoloVec.from_json(obj["v1"]),
        v2=HoloVec.from_json(obj["v2"]),
        meta=meta,
    )


def report_to_json(report: CurveReport) -> dict:
    def ratfunc(r: Optional[RatBiFunc]):
        if r is None:
            return None
        out = r.to_json()
        const = r.is_constant()
        out["constant_value"] = str(const) if const is not None else None
        return out

    return {
        "K": str(report.K) if report.K is not None else None,
        "K_float": float(report.K) if report.K is not None else None,
        "plucker_c": report.plucker_c.to_json() if report.plucker_c is not None else None,
        "plucker_c_float": float(report.plucker_c) if report.plucker_c is not None else None,
        "full_in": report.full_in,
        "deg": report.deg,
        "unramified": report.unramified,
        "det_a1_sq": ratfunc(report.det_a1),
        "det_a1_nowhere_zero": report.det_a1_nowhere_zero,
        "S": ratfunc(report.S),
        "S_constant": report.S_constant,
        "warnings": list(report.warnings),
    }
