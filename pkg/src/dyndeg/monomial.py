"""Exact analytics for monomial self-maps of projective space.

An integer matrix A with nonzero determinant defines the rational self-map
whose affine coordinates are the monomials with exponents given by the rows
of A.  This module computes the homogenized degree D(A), sup norms, and
characteristic polynomials exactly, certifies the spectral radius with an
enclosing rational interval, and checks the degree/norm inequalities that
relate them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactalg import MultiPoly
from .ratmap import ProjectiveMap

Rows = tuple[tuple[int, ...], ...]


class SingularMatrixError(ValueError):
    """Raised when a matrix with det = 0 is used where dominance is needed."""


def _validate_rows(matrix: Sequence[Sequence[int]]) -> Rows:
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    return rows


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in matrix]
    n = len(a)
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for k in range(i + 1, n):
                if a[k][i] != 0:
                    a[i], a[k] = a[k], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[-1][-1]


class MonomialMap:
    """A dominant monomial self-map of P^N, stored as its exponent matrix.

    Row i holds the exponents of the i-th affine coordinate monomial.  The
    map is dominant exactly when det(A) != 0, which is enforced here.
    """

    __slots__ = ("matrix", "n", "det")

    def __init__(self, matrix: Sequence[Sequence[int]]):
        rows = _validate_rows(matrix)
        d = int_det(rows)
        if d == 0:
            raise SingularMatrixError("exponent matrix must have nonzero determinant")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "n", len(rows))
        object.__setattr__(self, "det", d)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialMap is immutable")

    def __eq__(self, other):
        return isinstance(other, MonomialMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"MonomialMap({[list(r) for r in self.matrix]})"


def identity_rows(n: int) -> Rows:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Rows:
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_pow(a: Sequence[Sequence[int]], k: int) -> Rows:
    if k < 0:
        raise ValueError("exponent must be >= 0")
    result = identity_rows(len(a))
    base = tuple(tuple(int(x) for x in row) for row in a)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def sup_norm(matrix: Sequence[Sequence[int]]) -> int:
    """Largest absolute value of an entry."""
    return max(abs(x) for row in matrix for x in row)


def _degree_of_rows(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    col_clear = sum(max(0, max(-rows[i][j] for i in range(n))) for j in range(n))
    max_row_sum = max(0, max(sum(row) for row in rows))
    return col_clear + max_row_sum


def degree_D(m: MonomialMap) -> int:
    """Degree of the homogenized map: for each variable, the power needed to
    clear denominators, plus the largest positive row sum."""
    return _degree_of_rows(m.matrix)


def power(m: MonomialMap, k: int) -> MonomialMap:
    """k-th iterate as a monomial map (k >= 1); exponent matrices multiply."""
    if k < 1:
        raise ValueError("power must be >= 1")
    return MonomialMap(mat_pow(m.matrix, k))


def homogenize(m: MonomialMap) -> ProjectiveMap:
    """The map on P^N in homogeneous coordinates (last variable at infinity).

    Coordinate i is prod_j X_j^(a_ij + c_j) * Z^(d - row degree), where c_j
    clears the most negative exponent in column j and d = degree_D.
    """
    rows = m.matrix
    n = m.n
    clear = [max(0, max(-rows[i][j] for i in range(n))) for j in range(n)]
    d = _degree_of_rows(rows)
    coords = []
    for i in range(n):
        exps = [rows[i][j] + clear[j] for j in range(n)]
        exps.append(d - sum(exps))
        coords.append(MultiPoly.monomial(n + 1, tuple(exps), 1))
    last = list(clear) + [d - sum(clear)]
    coords.append(MultiPoly.monomial(n + 1, tuple(last), 1))
    return ProjectiveMap(coords)


def char_poly(m: MonomialMap) -> list[int]:
    """Coefficients of det(xI - A), descending, computed exactly."""
    n = m.n
    a = m.matrix
    coeffs = [1]
    mat = identity_rows(n)
    for k in range(1, n + 1):
        am = mat_mul(a, mat)
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "trace step must divide exactly"
        coeffs.append(q)
        mat = tuple(
            tuple(am[i][j] + (q if i == j else 0) for j in range(n)) for i in range(n)
        )
    return coeffs


def _roots_strictly_inside(coeffs_desc: Sequence[int], radius: Fraction) -> bool:
    """Exact test: do all roots of the integer polynomial lie in |z| < radius?

    Scales the polynomial to the unit disk and applies the Schur transform
    recursively: with ascending coefficients b_0..b_n, all roots are strictly
    inside iff |b_0| < |b_n| and the degree-(n-1) transform
    t_j = b_n*b_{j+1} - b_0*b_{n-1-j} again has all roots strictly inside.
    """
    if radius <= 0:
        return False
    num, den = radius.numerator, radius.denominator
    asc = list(reversed(coeffs_desc))
    n = len(asc) - 1
    b = [asc[j] * num**j * den ** (n - j) for j in range(n + 1)]
    while len(b) > 1:
        k = len(b) - 1
        if abs(b[0]) >= abs(b[k]):
            return False
        b = [b[k] * b[j + 1] - b[0] * b[k - 1 - j] for j in range(k)]
    return True


@dataclass(frozen=True)
class RadiusEnclosure:
    """Certified spectral-radius enclosure: low <= radius < high exactly."""

    value: float
    low: Fraction
    high: Fraction


def _float_radius_estimate(coeffs: list[int]) -> float | None:
    try:
        arr = np.array([float(c) for c in coeffs], dtype=float)
    except OverflowError:
        return None
    if not np.all(np.isfinite(arr)):
        return None
    if len(arr) < 2:
        return None
    roots = np.roots(arr)
    if roots.size == 0:
        return None
    est = float(np.max(np.abs(roots)))
    return est if math.isfinite(est) and est > 0 else None


_ROUND_DEN = 10**12


def _to_frac(x: float) -> Fraction:
    return Fraction(round(x * _ROUND_DEN), _ROUND_DEN)


def _certify_radius(coeffs: list[int], rel_tol: float) -> RadiusEnclosure:
    """Enclose the max root modulus of a monic integer polynomial whose roots
    have modulus product >= 1 (so the radius is >= 1)."""
    lo = Fraction(1)
    hi = Fraction(2 + max(abs(c) for c in coeffs))
    est = _float_radius_estimate(coeffs)
    if est is not None and est > 1:
        cand_lo = max(lo, _to_frac(est * (1 - rel_tol / 3)))
        cand_hi = _to_frac(est * (1 + rel_tol / 3))
        if cand_lo < cand_hi:
            if _roots_strictly_inside(coeffs, cand_hi):
                if not _roots_strictly_inside(coeffs, cand_lo):
                    mid = float((cand_lo + cand_hi) / 2)
                    return RadiusEnclosure(mid, cand_lo, cand_hi)
                hi = cand_lo
            else:
                lo = cand_hi
    if not _roots_strictly_inside(coeffs, hi):
        raise RuntimeError("spectral radius enclosure failed: no upper bound")
    for _ in range(500):
        if hi <= lo * (1 + Fraction(rel_tol).limit_denominator(10**9)):
            value = float((lo + hi) / 2)
            return RadiusEnclosure(value, lo, hi)
        mid = _to_frac(math.sqrt(float(lo) * float(hi)))
        if not lo < mid < hi:
            mid = (lo + hi) / 2
        if _roots_strictly_inside(coeffs, mid):
            hi = mid
        else:
            lo = mid
    raise RuntimeError("spectral radius enclosure did not converge")


def _check_rel_tol(rel_tol: float) -> None:
    if not (0 < rel_tol <= 1e-3):
        raise ValueError("rel_tol must lie in (0, 1e-3]")


def spectral_radius_enclosure(m: MonomialMap, rel_tol: float = 1e-6) -> RadiusEnclosure:
    """Largest eigenvalue modulus with a certified rational enclosure.

    The float estimate seeds an interval whose endpoints are verified by an
    exact all-roots-inside-disk test, so [low, high) always contains the true
    value and high/low - 1 <= rel_tol.
    """
    _check_rel_tol(rel_tol)
    return _certify_radius(char_poly(m), rel_tol)


def spectral_radius(m: MonomialMap, rel_tol: float = 1e-6) -> float:
    """Midpoint of spectral_radius_enclosure; relative error <= rel_tol."""
    return spectral_radius_enclosure(m, rel_tol).value


def verify_norm_equivalence(m: MonomialMap) -> bool:
    """Exact check of D(A)/(2N) <= sup_norm(A) <= N * D(A)."""
    d = degree_D(m)
    s = sup_norm(m.matrix)
    return Fraction(d, 2 * m.n) <= s <= m.n * d


def find_k_contraction(m: MonomialMap, rel_tol: float = 1e-6) -> int:
    """Least k in [0, N-1] with ||A^(k+1)|| * (2^(1/N) - 1) <= lam * ||A^k||,
    using the certified radius with a (1 + 2*rel_tol) guard band.  Such a k
    always exists; failure to find one signals a bug."""
    _check_rel_tol(rel_tol)
    lam = spectral_radius(m, rel_tol)
    factor = 2 ** (1 / m.n) - 1
    current = identity_rows(m.n)
    for k in range(m.n):
        nxt = mat_mul(current, m.matrix)
        if sup_norm(nxt) * factor <= lam * (1 + 2 * rel_tol) * sup_norm(current):
            return k
        current = nxt
    raise RuntimeError("no contraction index in [0, N-1]; invariant violated")


@dataclass(frozen=True)
class LowerBoundCheck:
    """Result of comparing the spectral radius against the degree-ratio
    lower bound (2^(1/N)-1)/(2N^2) * min_k D(A^(k+1))/D(A^k)."""

    holds: bool
    lhs: float
    rhs: float


def degree_ratio_lower_bound(m: MonomialMap, rel_tol: float = 1e-6) -> LowerBoundCheck:
    """Check lam(A) >= gamma_N * min over 0 <= k <= N-1 of D(A^(k+1))/D(A^k),
    with D(A^0) = 1 and gamma_N = (2^(1/N)-1)/(2N^2); lhs carries a
    (1 + 2*rel_tol) guard band."""
    _check_rel_tol(rel_tol)
    n = m.n
    gamma = (2 ** (1 / n) - 1) / (2 * n * n)
    degs = [1]
    current = identity_rows(n)
    for _ in range(n):
        current = mat_mul(current, m.matrix)
        degs.append(_degree_of_rows(current))
    ratio = min(Fraction(degs[k + 1], degs[k]) for k in range(n))
    lhs = spectral_radius(m, rel_tol)
    rhs = gamma * float(ratio)
    return LowerBoundCheck(holds=lhs * (1 + 2 * rel_tol) >= rhs, lhs=lhs, rhs=rhs)


def _adjugate(rows: Rows) -> Rows:
    n = len(rows)
    if n == 1:
        return ((1,),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            row.append((-1) ** (i + j) * int_det(minor))
        out.append(tuple(row))
    return tuple(out)


def inverse_map(m: MonomialMap) -> MonomialMap:
    """Exponent matrix of the inverse map; requires |det A| = 1."""
    if abs(m.det) != 1:
        raise ValueError("inverse requires |det A| = 1")
    adj = _adjugate(m.matrix)
    if m.det == 1:
        return MonomialMap(adj)
    return MonomialMap(tuple(tuple(-x for x in row) for row in adj))


def inverse_degree_bound_check(m: MonomialMap) -> bool:
    """Exact check of D(A^-1) <= D(A)^(N-1) for a birational monomial map."""
    inv = inverse_map(m)
    return degree_D(inv) <= degree_D(m) ** (m.n - 1)


def find_m_epsilon(
    m: MonomialMap, epsilon: float, rel_tol: float = 1e-6, m_cap: int = 64
) -> int | None:
    """Least m <= m_cap such that for every 0 <= k < N,
    (gamma_N * D(A^((k+1)m)) / D(A^(km)))^(1/m) >= lam(A) - epsilon,
    or None if no m within the cap works."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    _check_rel_tol(rel_tol)
    n = m.n
    gamma = (2 ** (1 / n) - 1) / (2 * n * n)
    target = spectral_radius(m, rel_tol) - epsilon
    log_gamma = math.log(gamma)
    for mm in range(1, m_cap + 1):
        step = mat_pow(m.matrix, mm)
        degs = [1]
        current = identity_rows(n)
        for _ in range(n):
            current = mat_mul(current, step)
            degs.append(_degree_of_rows(current))
        ok = True
        for k in range(n):
            value = math.exp(
                (log_gamma + math.log(degs[k + 1]) - math.log(degs[k])) / mm
            )
            if value < target:
                ok = False
                break
        if ok:
            return mm
    return None


@dataclass(frozen=True)
class SpectralData:
    """Exact invariants of a monomial map plus the certified radius."""

    n: int
    degree: int
    sup_norm: int
    char_poly: tuple[int, ...]
    radius: RadiusEnclosure


def analyze(m: MonomialMap, rel_tol: float = 1e-6) -> SpectralData:
    return SpectralData(
        n=m.n,
        degree=degree_D(m),
        sup_norm=sup_norm(m.matrix),
        char_poly=tuple(char_poly(m)),
        radius=spectral_radius_enclosure(m, rel_tol),
    )


def full_report(m: MonomialMap, rel_tol: float = 1e-6) -> dict:
    """All invariants and inequality checks in one JSON-friendly record."""
    data = analyze(m, rel_tol)
    bound = degree_ratio_lower_bound(m, rel_tol)
    report = {
        "N": data.n,
        "D": data.degree,
        "sup_norm": data.sup_norm,
        "char_poly": list(data.char_poly),
        "lambda": data.radius.value,
        "lambda_interval": [float(data.radius.low), float(data.radius.high)],
        "norm_equivalence": verify_norm_equivalence(m),
        "contraction_k": find_k_contraction(m, rel_tol),
        "degree_ratio_bound": {
            "holds": bound.holds,
            "lhs": bound.lhs,
            "rhs": bound.rhs,
        },
        "inverse_degree_bound": (
            inverse_degree_bound_check(m) if abs(m.det) == 1 else None
        ),
    }
    return report
