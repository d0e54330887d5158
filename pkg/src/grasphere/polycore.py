"""Polynomial algebra over the radical field.

Three value types cover everything downstream:

* :class:`CPoly` - univariate holomorphic polynomials in z over CQuad;
* :class:`BiPoly` - bivariate polynomials in (z, zbar); the Hermitian ones
  (c_ji = conj(c_ij)) represent real-valued quantities such as squared
  norms |f|^2 and (1+z*zbar)^k, and every constructor that promises a
  Hermitian result validates it;
* :class:`RatBiFunc` - quotients of BiPolys in lowest form, the home of the
  metric densities l_p and curvature functions.

All arithmetic is exact.  Proportionality and equality tests are
coefficient-wise; a numeric near-proportionality is provided separately for
floating pipelines.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .scalar import CQuad, QuadScalar, ScalarError

__all__ = [
    "PolyError",
    "CPoly",
    "HoloVec",
    "BiPoly",
    "RatBiFunc",
    "norm_sq",
    "herm_inner",
    "wedge",
    "osculating_wedges",
    "dz",
    "dz_h",
    "dzbar_h",
    "log_laplacian",
    "content_and_primitive",
    "is_proportional",
    "is_near_proportional",
    "cpoly_abs_sq",
    "one_plus_zzbar",
]

CoeffLike = Union[CQuad, QuadScalar, Fraction, int]


class PolyError(ValueError):
    pass


_C0 = CQuad(0)
_C1 = CQuad(1)


def _coerce(c: CoeffLike) -> CQuad:
    if isinstance(c, CQuad):
        return c
    if isinstance(c, (QuadScalar, Fraction, int)):
        return CQuad(c) if isinstance(c, QuadScalar) else CQuad.from_rational(c)
    raise PolyError(f"cannot use {type(c).__name__} as a coefficient")


def _rat_gcd(a: Fraction, b: Fraction) -> Fraction:
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


# ---------------------------------------------------------------------------
# CPoly
# ---------------------------------------------------------------------------


class CPoly:
    """Dense univariate polynomial in z over CQuad."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[CoeffLike] = ()):
        c = [_coerce(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self._c: tuple[CQuad, ...] = tuple(c)

    @staticmethod
    def zero() -> "CPoly":
        return CPoly()

    @staticmethod
    def one() -> "CPoly":
        return CPoly([1])

    @staticmethod
    def monomial(k: int, coeff: CoeffLike = 1) -> "CPoly":
        return CPoly([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple[CQuad, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree in z; -1 is the zero-polynomial sentinel."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, k: int) -> CQuad:
        return self._c[k] if 0 <= k < len(self._c) else _C0

    def __add__(self, other: "CPoly") -> "CPoly":
        n = max(len(self._c), len(other._c))
        return CPoly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "CPoly") -> "CPoly":
        n = max(len(self._c), len(other._c))
        return CPoly([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "CPoly":
        return CPoly([-x for x in self._c])

    def __mul__(self, other) -> "CPoly":
        if not isinstance(other, CPoly):
            s = _coerce(other)
            return CPoly([x * s for x in self._c])
        if self.is_zero() or other.is_zero():
            return CPoly()
        out = [_C0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a.is_zero():
                continue
            for j, b in enumerate(other._c):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return CPoly(out)

    def __rmul__(self, other) -> "CPoly":
        return self * other

    def dz(self) -> "CPoly":
        return CPoly([k * c for k, c in enumerate(self._c)][1:])

    def eval(self, x: CQuad) -> CQuad:
        out = _C0
        for c in reversed(self._c):
            out = out * x + c
        return out

    def eval_complex(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self._c):
            out = out * z + complex(c)
        return out

    def conj_coeffs(self) -> "CPoly":
        """Coefficient-wise conjugate; evaluating it at zbar gives conj(self(z))."""
        return CPoly([c.conj() for c in self._c])

    def reversed(self, degree: int | None = None) -> "CPoly":
        """z^degree * self(1/z); pads with zeros up to the given degree."""
        if self.is_zero():
            return self
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise PolyError("reversal degree below polynomial degree")
        return CPoly([0] * (d - self.degree) + list(self._c[::-1]))

    def monic(self) -> "CPoly":
        if self.is_zero():
            return self
        inv = self._c[-1].inverse()
        return CPoly([c * inv for c in self._c])

    def strip_rational_content(self) -> "CPoly":
        g = Fraction(0)
        for c in self._c:
            for _, q in c.re.terms:
                g = _rat_gcd(g, q)
            for _, q in c.im.terms:
                g = _rat_gcd(g, q)
        if g in (0, 1):
            return self
        inv = Fraction(1) / g
        return CPoly([c * CQuad.from_rational(inv) for c in self._c])

    def divmod(self, other: "CPoly") -> tuple["CPoly", "CPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        q = [_C0] * max(0, len(rem) - len(other._c) + 1)
        inv_lead = other._c[-1].inverse()
        while len(rem) >= len(other._c):
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) < len(other._c):
                break
            f = rem[-1] * inv_lead
            shift = len(rem) - len(other._c)
            q[shift] = f
            for i, c in enumerate(other._c):
                rem[i + shift] = rem[i + shift] - f * c
            rem.pop()
        return CPoly(q), CPoly(rem)

    def exact_div(self, other: "CPoly") -> "CPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise PolyError("exact division has nonzero remainder")
        return q

    def pseudo_rem(self, other: "CPoly") -> "CPoly":
        """Remainder of lc(other)^k * self by other, using only ring operations."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self
        lead = other._c[-1]
        while not rem.is_zero() and rem.degree >= other.degree:
            shift = rem.degree - other.degree
            top = rem._c[-1]
            rem = CPoly([c * lead for c in rem._c]) - CPoly([0] * shift + [c * top for c in other._c])
        return rem

    def gcd(self, other: "CPoly") -> "CPoly":
        """Monic gcd over the CQuad fraction field.

        Divisors are kept monic, so each step is a plain remainder; this
        rationalizes single-radical scalar factors up front and avoids the
        coefficient blowup of raw pseudo-remainder chains.
        """
        a, b = self, other
        while not b.is_zero():
            b = b.monic()
            r = a.pseudo_rem(b)
            a, b = b, r
        return a.monic()

    def __eq__(self, other) -> bool:
        return isinstance(other, CPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        if self.is_zero():
            return "CPoly(0)"
        parts = [f"({c})z^{k}" if k else f"({c})" for k, c in enumerate(self._c) if not c.is_zero()]
        return "CPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        return [c.to_json() for c in self._c]

    @staticmethod
    def from_json(obj: list) -> "CPoly":
        return CPoly([CQuad.from_json(c) for c in obj])


def dz(p: CPoly) -> CPoly:
    return p.dz()


# ---------------------------------------------------------------------------
# HoloVec
# ---------------------------------------------------------------------------


class HoloVec:
    """Fixed-length vector of holomorphic polynomials."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable, nonzero: bool = False):
        es = []
        for e in entries:
            es.append(e if isinstance(e, CPoly) else CPoly(e if isinstance(e, (list, tuple)) else [e]))
        self._entries: tuple[CPoly, ...] = tuple(es)
        if nonzero and self.is_zero():
            raise PolyError("section flagged nonzero is identically zero")

    @property
    def entries(self) -> tuple[CPoly, ...]:
        return self._entries

    @property
    def ambient_dim(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self._entries)

    def dz(self) -> "HoloVec":
        return HoloVec([e.dz() for e in self._entries])

    def scale(self, s) -> "HoloVec":
        return HoloVec([e * s for e in self._entries])

    def max_degree(self) -> int:
        return max((e.degree for e in self._entries), default=-1)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, k: int) -> CPoly:
        return self._entries[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, HoloVec) and self._entries == other._entries

    def __repr__(self) -> str:
        return f"HoloVec({list(self._entries)!r})"

    def to_json(self) -> list:
        return [e.to_json() for e in self._entries]

    @staticmethod
    def from_json(obj: list) -> "HoloVec":
        return HoloVec([CPoly.from_json(e) for e in obj])


# ---------------------------------------------------------------------------
# BiPoly
# ---------------------------------------------------------------------------


class BiPoly:
    """Dense bivariate polynomial sum c_ij z^i zbar^j over CQuad.

    Hermitian instances (c_ji = conj(c_ij), real diagonal) represent
    real-valued functions of z; `is_hermitian` checks the symmetry and the
    norm/abs-square constructors guarantee it.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[CoeffLike]] = ()):
        mat = [[_coerce(x) for x in row] for row in rows]
        width = max((len(r) for r in mat), default=0)
        for r in mat:
            r.extend([_C0] * (width - len(r)))
        while mat and all(c.is_zero() for c in mat[-1]):
            mat.pop()
        if mat:
            while mat[0] and all(row[-1].is_zero() for row in mat):
                for row in mat:
                    row.pop()
            if not mat[0]:
                mat = []
        self._rows: tuple[tuple[CQuad, ...], ...] = tuple(tuple(r) for r in mat)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly()

    @staticmethod
    def one() -> "BiPoly":
        return BiPoly([[1]])

    @staticmethod
    def constant(c: CoeffLike) -> "BiPoly":
        return BiPoly([[c]])

    @staticmethod
    def from_coeff(i: int, j: int, c: CoeffLike) -> "BiPoly":
        rows = [[0] * (j + 1) for _ in range(i + 1)]
        rows[i][j] = c
        return BiPoly(rows)

    @staticmethod
    def from_holomorphic(p: CPoly) -> "BiPoly":
        return BiPoly([[c] for c in p.coeffs])

    @staticmethod
    def from_antiholomorphic(p: CPoly) -> "BiPoly":
        """p with coefficients read as powers of zbar (already conjugated by caller)."""
        return BiPoly([list(p.coeffs)])

    # -- views --------------------------------------------------------------

    @property
    def rows(self) -> tuple[tuple[CQuad, ...], ...]:
        return self._rows

    @property
    def deg_z(self) -> int:
        return len(self._rows) - 1

    @property
    def deg_zbar(self) -> int:
        return len(self._rows[0]) - 1 if self._rows else -1

    def is_zero(self) -> bool:
        return not self._rows

    def coeff(self, i: int, j: int) -> CQuad:
        if 0 <= i < len(self._rows) and 0 <= j < len(self._rows[0]):
            return self._rows[i][j]
        return _C0

    def is_hermitian(self) -> bool:
        n = max(len(self._rows), len(self._rows[0]) if self._rows else 0)
        for i in range(n):
            for j in range(i, n):
                if self.coeff(i, j) != self.coeff(j, i).conj():
                    return False
        return True

    def is_constant(self) -> bool:
        return self.is_zero() or (self.deg_z == 0 and self.deg_zbar == 0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        nr = max(len(self._rows), len(other._rows))
        nc = max(self.deg_zbar, other.deg_zbar) + 1
        return BiPoly([[self.coeff(i, j) + other.coeff(i, j) for j in range(nc)] for i in range(nr)])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        nr = max(len(self._rows), len(other._rows))
        nc = max(self.deg_zbar, other.deg_zbar) + 1
        return BiPoly([[self.coeff(i, j) - other.coeff(i, j) for j in range(nc)] for i in range(nr)])

    def __neg__(self) -> "BiPoly":
        return BiPoly([[-c for c in row] for row in self._rows])

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            s = _coerce(other)
            return BiPoly([[c * s for c in row] for row in self._rows])
        if self.is_zero() or other.is_zero():
            return BiPoly()
        out = [[_C0] * (self.deg_zbar + other.deg_zbar + 1) for _ in range(self.deg_z + other.deg_z + 1)]
        for i, row in enumerate(self._rows):
            for j, a in enumerate(row):
                if a.is_zero():
                    continue
                for k, orow in enumerate(other._rows):
                    for l, b in enumerate(orow):
                        if b.is_zero():
                            continue
                        out[i + k][j + l] = out[i + k][j + l] + a * b
        return BiPoly(out)

    def __rmul__(self, other) -> "BiPoly":
        return self * other

    def __pow__(self, n: int) -> "BiPoly":
        out = BiPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def dz_h(self) -> "BiPoly":
        return BiPoly([[i * c for c in row] for i, row in enumerate(self._rows)][1:])

    def dzbar_h(self) -> "BiPoly":
        return BiPoly([[j * c for j, c in enumerate(row)][1:] for row in self._rows])

    def conj(self) -> "BiPoly":
        """Complex conjugate as a function of z (transpose + conjugate coefficients)."""
        if self.is_zero():
            return self
        nr, nc = self.deg_zbar + 1, self.deg_z + 1
        return BiPoly([[self.coeff(j, i).conj() for j in range(nc)] for i in range(nr)])

    # -- evaluation ---------------------------------------------------------

    def eval_complex(self, z: complex) -> complex:
        zb = z.conjugate()
        out = 0j
        for i, row in enumerate(self._rows):
            for j, c in enumerate(row):
                if not c.is_zero():
                    out += complex(c) * z**i * zb**j
        return out

    def eval_exact(self, zre: Fraction, zim: Fraction) -> CQuad:
        """Exact value at z = zre + i*zim (zbar = conjugate)."""
        z = CQuad(zre, zim)
        zb = z.conj()
        out = _C0
        for i, row in enumerate(self._rows):
            zi = z ** 0
            for _ in range(i):
                zi = zi * z
            for j, c in enumerate(row):
                if c.is_zero():
                    continue
                term = c * zi
                for _ in range(j):
                    term = term * zb
                out = out + term
        return out

    # -- zbar-direction polynomial view (for gcd machinery) -----------------

    def zbar_cols(self) -> list[CPoly]:
        """Coefficient CPolys of zbar^j for j = 0..deg_zbar."""
        if self.is_zero():
            return []
        return [CPoly([row[j] for row in self._rows]) for j in range(self.deg_zbar + 1)]

    @staticmethod
    def from_zbar_cols(cols: Sequence[CPoly]) -> "BiPoly":
        if not cols:
            return BiPoly()
        nr = max((c.degree for c in cols), default=-1) + 1
        return BiPoly([[cols[j][i] for j in range(len(cols))] for i in range(max(nr, 1))])

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        q, r = _bipoly_divmod(self, other)
        if not r.is_zero():
            raise PolyError("exact bivariate division has nonzero remainder")
        return q

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        if self.is_zero():
            return "BiPoly(0)"
        parts = []
        for i, row in enumerate(self._rows):
            for j, c in enumerate(row):
                if c.is_zero():
                    continue
                mono = ("" if i == 0 else f"z^{i}") + ("" if j == 0 else f"zb^{j}")
                parts.append(f"({c}){mono}" if mono else f"({c})")
        return "BiPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        return [[c.to_json() for c in row] for row in self._rows]

    @staticmethod
    def from_json(obj: list) -> "BiPoly":
        return BiPoly([[CQuad.from_json(c) for c in row] for row in obj])


def one_plus_zzbar(power: int = 1) -> BiPoly:
    return BiPoly([[1, 0], [0, 1]]) ** power


def cpoly_abs_sq(h: CPoly) -> BiPoly:
    """|h(z)|^2 = h(z) * conj(h)(zbar) as a Hermitian BiPoly."""
    if h.is_zero():
        return BiPoly()
    return BiPoly([[a * b.conj() for b in h.coeffs] for a in h.coeffs])


def dz_h(p: BiPoly) -> BiPoly:
    return p.dz_h()


def dzbar_h(p: BiPoly) -> BiPoly:
    return p.dzbar_h()


# ---------------------------------------------------------------------------
# norms, inner products, wedges
# ---------------------------------------------------------------------------


def norm_sq(v: HoloVec) -> BiPoly:
    """|v|^2 = sum_a v_a(z) * conj(v_a)(zbar); Hermitian by construction."""
    out = BiPoly()
    for e in v:
        out = out + cpoly_abs_sq(e)
    return out


def herm_inner(v: HoloVec, w: HoloVec) -> BiPoly:
    """<v, w> = sum_a v_a(z) * conj(w_a)(zbar)."""
    if v.ambient_dim != w.ambient_dim:
        raise PolyError("dimension mismatch in inner product")
    out = BiPoly()
    for a, b in zip(v, w):
        if a.is_zero() or b.is_zero():
            continue
        out = out + BiPoly([[x * y.conj() for y in b.coeffs] for x in a.coeffs])
    return out


def wedge(v: HoloVec, w: HoloVec) -> HoloVec:
    """Pluecker coordinates v_a w_b - v_b w_a, pairs (a<b) in lexicographic order."""
    if v.ambient_dim != w.ambient_dim:
        raise PolyError("dimension mismatch in wedge")
    return HoloVec([v[a] * w[b] - v[b] * w[a] for a, b in itertools.combinations(range(v.ambient_dim), 2)])


def osculating_wedges(rows: Sequence[HoloVec], up_to: int) -> list[HoloVec]:
    """All top minors row_0 ^ ... ^ row_p for p = 0..up_to, columns lexicographic.

    Dynamic programming over column subsets: the (p+1)-row minors expand
    along the last row in terms of the p-row minors.
    """
    n = rows[0].ambient_dim
    out: list[HoloVec] = []
    prev: dict[tuple[int, ...], CPoly] = {(): CPoly.one()}
    for p in range(up_to + 1):
        cur: dict[tuple[int, ...], CPoly] = {}
        row = rows[p]
        for cols in itertools.combinations(range(n), p + 1):
            acc = CPoly.zero()
            for pos in range(p, -1, -1):
                c = cols[pos]
                entry = row[c]
                if entry.is_zero():
                    continue
                sub = prev[cols[:pos] + cols[pos + 1:]]
                term = entry * sub
                acc = acc + term if (p - pos) % 2 == 0 else acc - term
            cur[cols] = acc
        out.append(HoloVec([cur[c] for c in itertools.combinations(range(n), p + 1)]))
        prev = cur
    return out


def content_and_primitive(v: HoloVec) -> tuple[CPoly, HoloVec]:
    """Monic gcd of the entries and the content-free vector (v = g * v~)."""
    if v.is_zero():
        raise PolyError("content of the zero vector")
    g = CPoly.zero()
    for e in v:
        if not e.is_zero():
            g = e if g.is_zero() else g.gcd(e)
        if g.degree == 0:
            break
    g = g.monic()
    if g.degree <= 0:
        return CPoly.one(), v
    return g, HoloVec([e.exact_div(g) if not e.is_zero() else e for e in v])


# ---------------------------------------------------------------------------
# proportionality
# ---------------------------------------------------------------------------


def is_proportional(p: BiPoly, q: BiPoly) -> Optional[QuadScalar]:
    """lambda with p = lambda * q exactly, or None.  Hermitian inputs force a
    real constant; a complex ratio raises."""
    if q.is_zero():
        raise PolyError("proportionality against the zero polynomial")
    if p.is_zero():
        return QuadScalar.zero()
    lam: Optional[CQuad] = None
    for i, row in enumerate(q.rows):
        for j, c in enumerate(row):
            if not c.is_zero():
                lam = p.coeff(i, j) / c
                break
        if lam is not None:
            break
    assert lam is not None
    if q * lam != p:
        return None
    if not lam.is_real():
        raise PolyError("proportionality constant is not real")
    return lam.re


def is_near_proportional(p: BiPoly, q: BiPoly, tol: float = 1e-10, grid: int = 5) -> Optional[complex]:
    """Numeric fallback: ratio on a sample grid when it is stable within tol."""
    pts = [complex(0.37 * (k + 1), -0.21 * (k - grid // 2)) for k in range(grid)]
    ratios = []
    for z in pts:
        qv = q.eval_complex(z)
        if abs(qv) < 1e-14:
            continue
        ratios.append(p.eval_complex(z) / qv)
    if not ratios:
        return None
    base = ratios[0]
    scale = max(1.0, abs(base))
    if all(abs(r - base) <= tol * scale for r in ratios):
        return base
    return None


# ---------------------------------------------------------------------------
# bivariate gcd and rational functions
# ---------------------------------------------------------------------------


def _cpoly_list_gcd(polys: Iterable[CPoly]) -> CPoly:
    g = CPoly.zero()
    for p in polys:
        if p.is_zero():
            continue
        g = p if g.is_zero() else g.gcd(p)
        if g.degree == 0:
            return CPoly.one()
    return g.monic() if not g.is_zero() else g


def _zbar_content(p: BiPoly) -> tuple[CPoly, list[CPoly]]:
    cols = p.zbar_cols()
    g = _cpoly_list_gcd(cols)
    if g.is_zero():
        return CPoly.zero(), []
    if g.degree == 0:
        return CPoly.one(), cols
    return g, [c.exact_div(g) if not c.is_zero() else c for c in cols]


def _cols_trim(cols: list[CPoly]) -> list[CPoly]:
    cols = list(cols)
    while cols and cols[-1].is_zero():
        cols.pop()
    return cols


def _cols_pseudo_rem(a: list[CPoly], b: list[CPoly]) -> list[CPoly]:
    a = _cols_trim(a)
    b = _cols_trim(b)
    lead = b[-1]
    while a and len(a) >= len(b):
        top = a[-1]
        shift = len(a) - len(b)
        new = [c * lead for c in a]
        for i, c in enumerate(b):
            new[i + shift] = new[i + shift] - top * c
        a = _cols_trim(new)
    return a


def _cols_strip_content(cols: list[CPoly]) -> list[CPoly]:
    g = _cpoly_list_gcd(cols)
    if g.is_zero() or g.degree <= 0:
        return cols
    return [c.exact_div(g) if not c.is_zero() else c for c in cols]


def bipoly_gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """gcd over CQuad[z, zbar], normalized with a monic leading coefficient."""
    if p.is_zero():
        return _bipoly_normalize(q)
    if q.is_zero():
        return _bipoly_normalize(p)
    cont_p, prim_p = _zbar_content(p)
    cont_q, prim_q = _zbar_content(q)
    cont = cont_p.gcd(cont_q)
    a, b = _cols_trim(prim_p), _cols_trim(prim_q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _cols_strip_content(_cols_pseudo_rem(a, b))
        a, b = b, r
    a = _cols_strip_content(a)
    g = BiPoly.from_zbar_cols([c * cont for c in a])
    return _bipoly_normalize(g)


def _bipoly_normalize(p: BiPoly) -> BiPoly:
    """Scale so the top coefficient (highest z, then zbar power) is one."""
    if p.is_zero():
        return p
    lead = None
    for row in reversed(p.rows):
        for c in reversed(row):
            if not c.is_zero():
                lead = c
                break
        if lead is not None:
            break
    return p * lead.inverse()


def _bipoly_divmod(p: BiPoly, d: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Division in zbar over CQuad[z]; exact only when d's leading column divides."""
    if d.is_zero():
        raise ZeroDivisionError("bivariate division by zero")
    dcols = _cols_trim(d.zbar_cols())
    rcols = _cols_trim(p.zbar_cols())
    qcols: list[CPoly] = [CPoly.zero()] * max(0, len(rcols) - len(dcols) + 1)
    lead = dcols[-1]
    while rcols and len(rcols) >= len(dcols):
        f = rcols[-1].exact_div(lead)
        shift = len(rcols) - len(dcols)
        qcols[shift] = qcols[shift] + f
        for i, c in enumerate(dcols):
            rcols[i + shift] = rcols[i + shift] - f * c
        rcols = _cols_trim(rcols)
    return BiPoly.from_zbar_cols(qcols), BiPoly.from_zbar_cols(rcols)


def _power_of_fubini(p: BiPoly) -> Optional[tuple[int, CQuad]]:
    """(m, lead) when p = lead * (1+z*zbar)^m, else None."""
    m = p.deg_z
    if m != p.deg_zbar:
        return None
    lead = p.coeff(m, m)
    if lead.is_zero():
        return None
    if p != one_plus_zzbar(m) * lead:
        return None
    return m, lead


class RatBiFunc:
    """Quotient of BiPolys, reduced to lowest form on construction."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly, reduce: bool = True):
        if den.is_zero():
            raise PolyError("RatBiFunc with identically zero denominator")
        if num.is_zero():
            self.num, self.den = BiPoly.zero(), BiPoly.one()
            return
        if reduce:
            fub = _power_of_fubini(den)
            if fub is not None:
                # denominators of the curvature pipeline are powers of the
                # Fubini-Study factor; peeling them off avoids the general
                # (and much costlier) bivariate gcd
                m, lead = fub
                base = one_plus_zzbar(1)
                while m > 0:
                    try:
                        num = num.exact_div(base)
                    except PolyError:
                        break
                    m -= 1
                den = one_plus_zzbar(m) * lead
            else:
                g = bipoly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
        lead = None
        for row in reversed(den.rows):
            for c in reversed(row):
                if not c.is_zero():
                    lead = c
                    break
            if lead is not None:
                break
        inv = lead.inverse()
        self.num = num * inv
        self.den = den * inv

    @staticmethod
    def constant(c: CoeffLike) -> "RatBiFunc":
        return RatBiFunc(BiPoly.constant(c), BiPoly.one(), reduce=False)

    @staticmethod
    def zero() -> "RatBiFunc":
        return RatBiFunc(BiPoly.zero(), BiPoly.one(), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatBiFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __add__(self, other: "RatBiFunc") -> "RatBiFunc":
        if self.den == other.den:
            return RatBiFunc(self.num + other.num, self.den)
        return RatBiFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatBiFunc") -> "RatBiFunc":
        if self.den == other.den:
            return RatBiFunc(self.num - other.num, self.den)
        return RatBiFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatBiFunc":
        return RatBiFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other) -> "RatBiFunc":
        if isinstance(other, RatBiFunc):
            return RatBiFunc(self.num * other.num, self.den * other.den)
        return RatBiFunc(self.num * other, self.den, reduce=False)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatBiFunc") -> "RatBiFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatBiFunc(self.num * other.den, self.den * other.num)

    def is_constant(self) -> Optional[QuadScalar]:
        """The constant value when num = const * den, else None."""
        if self.is_zero():
            return QuadScalar.zero()
        return is_proportional(self.num, self.den)

    def eval_complex(self, z: complex) -> complex:
        return self.num.eval_complex(z) / self.den.eval_complex(z)

    def __repr__(self) -> str:
        return f"RatBiFunc({self.num!r} / {self.den!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "RatBiFunc":
        return RatBiFunc(BiPoly.from_json(obj["num"]), BiPoly.from_json(obj["den"]))


def log_laplacian(p: BiPoly) -> RatBiFunc:
    """d^2/(dz dzbar) log p  as  (p p_zzbar - p_z p_zbar) / p^2, lowest form."""
    if p.is_zero():
        raise PolyError("log-laplacian of the zero polynomial")
    pz = p.dz_h()
    num = p * pz.dzbar_h() - pz * p.dzbar_h()
    return RatBiFunc(num, p * p)
