"""Exact linear algebra and univariate utilities over the rationals.

Internal helpers shared by the family/spectral/curve layers: fraction-free
(Bareiss) rank and determinant, a pivoted LDL^T positive-semidefiniteness
test that doubles as an exact square-root-free factorization, and Sturm
root counting for rational polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _to_integer_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    scaled = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        scaled.append([int(x * lcm) for x in row])
    return scaled


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def bareiss_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free Gaussian elimination with full pivoting."""
    m = _to_integer_matrix(rows)
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    used_cols: set[int] = set()
    while r < nr:
        piv = None
        for i in range(r, nr):
            for j in range(nc):
                if j not in used_cols and m[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        m[r], m[pi] = m[pi], m[r]
        used_cols.add(pj)
        for i in range(r + 1, nr):
            for j in range(nc):
                if j == pj:
                    continue
                m[i][j] = (m[i][j] * m[r][pj] - m[i][pj] * m[r][j]) // prev
            m[i][pj] = 0
        prev = m[r][pj]
        rank += 1
        r += 1
    return rank


def bareiss_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def psd_factor(rows: Sequence[Sequence[Fraction]]) -> tuple[bool, list[tuple[Fraction, list[Fraction]]]]:
    """Pivoted symmetric elimination of a rational symmetric matrix.

    Returns (is_psd, factors) with factors = [(d_k, u_k), ...] such that
    C = sum_k d_k * u_k u_k^T, all d_k > 0, len(factors) = rank(C) when C is
    PSD.  A symmetric matrix is PSD iff the elimination runs to completion
    choosing positive diagonal pivots and leaves the zero matrix; a negative
    diagonal entry, or a zero diagonal with nonzero residual, disproves it.
    """
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    factors: list[tuple[Fraction, list[Fraction]]] = []
    for _ in range(n):
        if any(a[i][i] < 0 for i in range(n)):
            return False, factors
        pivot = -1
        best = Fraction(0)
        for i in range(n):
            if a[i][i] > best:
                best, pivot = a[i][i], i
        if pivot < 0:
            break
        d = a[pivot][pivot]
        u = [a[i][pivot] / d for i in range(n)]
        factors.append((d, u))
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                a[i][j] -= d * u[i] * u[j]
    is_psd = all(a[i][j] == 0 for i in range(n) for j in range(n))
    return is_psd, factors


def field_rank(rows: list[list], is_zero, divide) -> int:
    """Rank over an arbitrary field given zero-test and division callables."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    col = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if not is_zero(m[i][col]):
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nr):
            if is_zero(m[i][col]):
                continue
            f = divide(m[i][col], m[rank][col])
            for j in range(col, nc):
                m[i][j] = m[i][j] - f * m[rank][j]
        rank += 1
        if rank == nr:
            break
    return rank


# ---------------------------------------------------------------------------
# rational univariate polynomials (dense, index = power)
# ---------------------------------------------------------------------------


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_trim(coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_deriv(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(coeffs)][1:]


def poly_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = poly_trim(a)
        if not a:
            break
    return a


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def sturm_root_count(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of the polynomial in the interval (lo, hi])."""
    p = poly_trim(coeffs)
    if len(p) <= 1:
        return 0
    chain = [p, poly_trim(poly_deriv(p))]
    while chain[-1]:
        r = poly_rem(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()

    def variations(x: Fraction) -> int:
        signs = [poly_eval(q, x) for q in chain]
        signs = [s for s in signs if s != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))

    return variations(lo) - variations(hi)
