"""The quadratic plane family [XY, XY + aZ^2, bYZ + cZ^2] and its stability.

For rational parameters with abc != 0 this map is birational with explicit
inverse and fiber structure.  Its stability is governed by the linear
recurrence V_0 = 1, V_1 = c, V_{n+1} = c V_n + ab V_{n-1}: a degree drop
occurs exactly when some V_m vanishes, which for rational parameters happens
iff c^2/(ab) is one of -1, -2, -3 (a root-of-unity condition with orders
3, 4, 6).  The same machinery runs modulo primes and for one-parameter
polynomial families, where the parameters with a drop form a bounded-height
exceptional locus cut out by explicit polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .cyclo import cos_min_poly, rational_two_cos_values
from .exactalg import (
    DomainMismatchError,
    Fp,
    MultiPoly,
    is_prime,
    jacobian_det,
    parse_poly,
    poly_divexact,
    poly_gcd,
)
from .ratmap import (
    INDETERMINATE,
    ProjectiveMap,
    ProjectivePoint,
)

Rational = Union[int, Fraction]


class DegenerateParameterError(ValueError):
    """Raised when a*b*c = 0, where the family degenerates."""


@dataclass(frozen=True)
class FabcParams:
    """Parameters (a, b, c) with abc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a: Rational, b: Rational, c: Rational):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        if self.a * self.b * self.c == 0:
            raise DegenerateParameterError("parameters must satisfy a*b*c != 0")


def _xyz(num_vars: int = 3, modulus=None) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    return tuple(MultiPoly.variable(num_vars, i, modulus) for i in range(3))


def _lift_params(p: FabcParams, modulus: int | None):
    if modulus is None:
        return p.a, p.b, p.c
    zero = Fp(0, modulus)
    try:
        lifted = tuple(zero._lift(v) for v in (p.a, p.b, p.c))
    except DomainMismatchError as exc:
        raise DegenerateParameterError(
            f"denominator vanishes modulo {modulus}"
        ) from exc
    if any(v.v == 0 for v in lifted):
        raise DegenerateParameterError(f"a*b*c = 0 modulo {modulus}")
    return lifted


def build_map(p: FabcParams, modulus: int | None = None) -> ProjectiveMap:
    """The degree-2 map [XY, XY + aZ^2, bYZ + cZ^2]."""
    a, b, c = _lift_params(p, modulus)
    x, y, z = _xyz(3, modulus)
    return ProjectiveMap([x * y, x * y + a * z**2, b * (y * z) + c * z**2])


def inverse_map(p: FabcParams, modulus: int | None = None) -> ProjectiveMap:
    """The inverse map, normalized; composing with build_map and cancelling
    the common factor a^2 b^2 Y Z^2 gives the identity."""
    a, b, c = _lift_params(p, modulus)
    x, y, z = _xyz(3, modulus)
    w = c * x - c * y + a * z
    return ProjectiveMap([(a * b * b) * (x * (y - x)), w * w, b * (w * (y - x))])


def build_map_symbolic() -> ProjectiveMap:
    """The map with a, b, c as symbolic parameters (variables 3, 4, 5)."""
    x, y, z, a, b, c = (MultiPoly.variable(6, i) for i in range(6))
    return ProjectiveMap([x * y, x * y + a * z**2, b * (y * z) + c * z**2])


def inverse_map_symbolic() -> ProjectiveMap:
    x, y, z, a, b, c = (MultiPoly.variable(6, i) for i in range(6))
    w = c * x - c * y + a * z
    return ProjectiveMap([a * b**2 * x * (y - x), w * w, b * w * (y - x)])


def indeterminacy_points(p: FabcParams) -> frozenset[ProjectivePoint]:
    """Common zeros of the three coordinate forms, derived from the system:
    XY = 0 and (XY + aZ^2) = 0 force Z = 0 (a != 0), leaving XY = 0 on the
    line Z = 0.  Each candidate is verified against the map."""
    f = build_map(p)
    candidates = [ProjectivePoint([0, 1, 0]), ProjectivePoint([1, 0, 0])]
    points = []
    for q in candidates:
        if f.apply(q) is not INDETERMINATE:
            raise RuntimeError(f"derived indeterminacy point {q} fails verification")
        points.append(q)
    # No solutions off Z = 0: with Z = 1, XY = 0 and XY + a = 0 give a = 0.
    if p.a == 0:  # pragma: no cover - unreachable after validation
        raise DegenerateParameterError("a = 0")
    return frozenset(points)


def critical_locus(p: FabcParams) -> MultiPoly:
    """Jacobian determinant of the coordinate forms, canonically scaled;
    equals -2ab * Y * Z^2 up to that scaling."""
    f = build_map(p)
    return jacobian_det(f.coords).canonical()


def critical_locus_symbolic() -> MultiPoly:
    f = build_map_symbolic()
    return jacobian_det(f.coords, wrt=(0, 1, 2)).canonical()


@dataclass(frozen=True)
class PreimagePoint:
    """A single-point fiber."""

    point: ProjectivePoint


@dataclass(frozen=True)
class PreimageLine:
    """A whole coordinate line minus finitely many removed points.

    vanishing_var is the index (0=X, 1=Y, 2=Z) of the coordinate that
    vanishes on the line.
    """

    vanishing_var: int
    removed: tuple[ProjectivePoint, ...]


@dataclass(frozen=True)
class PreimageEmpty:
    """An empty fiber."""


PreimageResult = Union[PreimagePoint, PreimageLine, PreimageEmpty]


def preimage(p: FabcParams, target) -> PreimageResult:
    """Exact fiber of the map over a point, by case analysis on the target.

    Single-point answers are verified by applying the forward map.
    """
    q = target if isinstance(target, ProjectivePoint) else ProjectivePoint(target)
    if q.dim != 2 or q.modulus is not None:
        raise ValueError("target must be a rational point of the plane")
    alpha, beta, gamma = q.coords
    a, b, c = p.a, p.b, p.c
    f = build_map(p)

    def verified_point(coords) -> PreimagePoint:
        pt = ProjectivePoint(coords)
        image = f.apply(pt)
        if image is INDETERMINATE or image != q:
            raise RuntimeError(f"fiber formula failed verification at {q}")
        return PreimagePoint(pt)

    if alpha == 0:
        if beta == 0:
            # [0,0,1]: nothing maps there (X Y = 0 and X Y + a Z^2 = 0
            # force Z = 0, but then the last coordinate also vanishes).
            return PreimageEmpty()
        if beta * c == gamma * a:
            # [0,a,c]: the whole line Y = 0 collapses onto it.
            return PreimageLine(
                vanishing_var=1, removed=(ProjectivePoint([1, 0, 0]),)
            )
        return verified_point([0, a * gamma - c * beta, b * beta])
    if beta == alpha:
        if gamma == 0:
            # [1,1,0]: the image of the line Z = 0 minus the indeterminacy.
            return PreimageLine(
                vanishing_var=2,
                removed=(ProjectivePoint([0, 1, 0]), ProjectivePoint([1, 0, 0])),
            )
        # First two coordinates agree only on Z = 0, whose image has
        # vanishing last coordinate; gamma != 0 is unreachable.
        return PreimageEmpty()
    w = alpha * c - beta * c + gamma * a
    if w == 0:
        # Targets [a, a*t, c*t - c] with t != 1 have no preimage: the
        # candidate from the inverse formula lands on [0,1,0].
        return PreimageEmpty()
    return verified_point(
        [alpha * (beta - alpha) * a * b * b, w * w, (beta - alpha) * w * b]
    )


def vn_sequence(p: FabcParams, n_max: int, modulus: int | None = None) -> list:
    """V_0..V_nMax by the exact recurrence V_{n+1} = c V_n + ab V_{n-1},
    over the rationals or a prime field."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    a, b, c = _lift_params(p, modulus)
    one = Fp(1, modulus) if modulus is not None else Fraction(1)
    ab = a * b
    out = [one]
    if n_max >= 1:
        out.append(c)
    for _ in range(2, n_max + 1):
        out.append(c * out[-1] + ab * out[-2])
    return out


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the stability test.

    Unstable verdicts carry the root-of-unity order n and the vanishing
    index m = n - 1 with V_m = 0 (verified exactly).
    """

    status: str  # "Stable" | "Unstable" | "Degenerate"
    zeta_order: int | None = None
    vanishing_index: int | None = None
    reason: str | None = None


def _order_of_two_cos(w: Fraction) -> int:
    """Least n with 2cos(2*pi/n) = w, for w in the rational value set."""
    for n in range(1, 13):
        poly = cos_min_poly(n)
        if poly.degree == 1 and poly.evaluate([w]) == 0:
            return n
    raise ValueError(f"{w} is not a rational 2cos value")


def classify(p: FabcParams) -> StabilityVerdict:
    """Stability of the map for rational parameters.

    The degree sequence drops iff some V_m = 0, which forces the ratio of
    the recurrence's characteristic roots to be a root of unity zeta with
    zeta + 1/zeta = -2 - c^2/(ab) rational.  Rational values of
    zeta + 1/zeta are 0, +-1, +-2; excluding zeta = 1 (where V_n never
    vanishes) and zeta = -1 (which forces c = 0) leaves
    c^2/(ab) in {-1, -2, -3}, with orders 3, 4, 6 and V_{n-1} = 0.
    """
    kappa = p.c * p.c / (p.a * p.b)
    w = -2 - kappa
    allowed = rational_two_cos_values() - {Fraction(2), Fraction(-2)}
    if w not in allowed:
        return StabilityVerdict(status="Stable")
    order = _order_of_two_cos(w)
    m = order - 1
    witness = vn_sequence(p, m)
    if witness[m] != 0 or any(v == 0 for v in witness[1:m]):
        raise RuntimeError(
            f"vanishing-index witness failed for {p}: V = {witness}"
        )
    return StabilityVerdict(status="Unstable", zeta_order=order, vanishing_index=m)


@dataclass(frozen=True)
class ModPResult:
    """Result of the mod-p vanishing search for integer parameters."""

    p: int
    status: str  # "ExceptionalAt" | "NotFoundWithinCap" | "DegenerateModP"
    m: int | None
    search_cap: int


def classify_mod_p(
    a: int, b: int, c: int, p: int, search_cap: int | None = None
) -> ModPResult:
    """Least m >= 1 with V_m = 0 modulo p, by the exact recurrence.

    The default cap p^2 always suffices for p not dividing abc: the ratio of
    the characteristic roots lies in a field with p^2 elements, so its
    multiplicative order divides p^2 - 1 (and the repeated-root case
    vanishes at m = p - 1).
    """
    for name, v in (("a", a), ("b", b), ("c", c)):
        if not isinstance(v, int):
            raise TypeError(f"{name} must be an integer")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cap = p * p if search_cap is None else search_cap
    if cap < 1:
        raise ValueError("search_cap must be >= 1")
    if (a * b * c) % p == 0:
        return ModPResult(p=p, status="DegenerateModP", m=None, search_cap=cap)
    ab = (a * b) % p
    prev, cur = 1, c % p
    if cur == 0:  # pragma: no cover - impossible, p does not divide c
        return ModPResult(p=p, status="ExceptionalAt", m=1, search_cap=cap)
    for m in range(2, cap + 1):
        prev, cur = cur, (c * cur + ab * prev) % p
        if cur == 0:
            return ModPResult(p=p, status="ExceptionalAt", m=m, search_cap=cap)
    return ModPResult(p=p, status="NotFoundWithinCap", m=None, search_cap=cap)


@dataclass(frozen=True)
class FamilyParams:
    """Polynomials a(T), b(T), c(T) (univariate over the rationals, nonzero)
    defining a one-parameter family of maps."""

    a_poly: MultiPoly
    b_poly: MultiPoly
    c_poly: MultiPoly

    def __init__(self, a_poly, b_poly, c_poly):
        polys = []
        for name, raw in (("a", a_poly), ("b", b_poly), ("c", c_poly)):
            poly = (
                raw
                if isinstance(raw, MultiPoly)
                else parse_poly(str(raw), 1, var_names=("T",))
            )
            if poly.num_vars != 1 or poly.modulus is not None:
                raise ValueError(f"{name}(T) must be univariate over the rationals")
            if poly.is_zero():
                raise DegenerateParameterError(f"{name}(T) must be nonzero")
            polys.append(poly)
        object.__setattr__(self, "a_poly", polys[0])
        object.__setattr__(self, "b_poly", polys[1])
        object.__setattr__(self, "c_poly", polys[2])

    def specialize(self, t: Rational) -> FabcParams:
        tt = Fraction(t)
        return FabcParams(
            self.a_poly.evaluate([tt]),
            self.b_poly.evaluate([tt]),
            self.c_poly.evaluate([tt]),
        )


@dataclass(frozen=True)
class GenericStability:
    """Stability of the family over the rational function field."""

    status: str  # "GenericallyStable" | "GenericallyUnstable"
    kappa: Fraction | None = None  # constant value of c^2/(ab) if constant
    witness: StabilityVerdict | None = None


def family_generic_stability(f: FamilyParams) -> GenericStability:
    """Stable over the function field unless c(T)^2/(a(T)b(T)) is a constant
    in {-1, -2, -3}."""
    c2 = f.c_poly * f.c_poly
    ab = f.a_poly * f.b_poly
    kappa = Fraction(c2.leading()[1], ab.leading()[1])
    if not (c2 - kappa * ab).is_zero():
        return GenericStability(status="GenericallyStable")
    if kappa in (Fraction(-1), Fraction(-2), Fraction(-3)):
        order = _order_of_two_cos(-2 - kappa)
        verdict = StabilityVerdict(
            status="Unstable", zeta_order=order, vanishing_index=order - 1
        )
        return GenericStability(
            status="GenericallyUnstable", kappa=kappa, witness=verdict
        )
    return GenericStability(status="GenericallyStable", kappa=kappa)


def _strip_shared_factors(poly: MultiPoly, other: MultiPoly) -> MultiPoly:
    """Divide out of poly every factor it shares with other, repeatedly."""
    while True:
        g = poly_gcd(poly, other)
        if g.is_constant():
            return poly
        poly = poly_divexact(poly, g)


def _psi_numerator(n: int, neg_w_num: MultiPoly, ab: MultiPoly) -> MultiPoly:
    """Numerator of Psi_n(w) at w = neg_w_num / ab, cleared by ab^deg."""
    psi = cos_min_poly(n)
    d = psi.degree
    coeffs = [Fraction(0)] * (d + 1)
    for exps, coeff in psi.terms:
        coeffs[exps[0]] = coeff
    total = MultiPoly.zero(1)
    num_pow = MultiPoly.constant(1, 1)
    ab_pows = [MultiPoly.constant(1, 1)]
    for _ in range(d):
        ab_pows.append(ab_pows[-1] * ab)
    for j in range(d + 1):
        if coeffs[j]:
            total = total + coeffs[j] * num_pow * ab_pows[d - j]
        if j < d:
            num_pow = num_pow * neg_w_num
    return total


@dataclass(frozen=True)
class LocusEntry:
    """One order's slice of the exceptional locus: the defining polynomial,
    its numeric roots, and a per-root height (shared Mahler value)."""

    order: int
    poly: MultiPoly
    roots: tuple[complex, ...]
    heights: tuple[float, ...]


@dataclass(frozen=True)
class ExceptionalLocus:
    entries: tuple[LocusEntry, ...]
    degenerate_params: tuple[complex, ...]
    zeta_one_poly: MultiPoly
    truncation: int


def _poly_coeffs_desc(poly: MultiPoly) -> list[Fraction]:
    d = poly.degree if not poly.is_zero() else 0
    out = [Fraction(0)] * (d + 1)
    for exps, coeff in poly.terms:
        out[d - exps[0]] = coeff
    return out


def _numeric_roots(poly: MultiPoly) -> tuple[complex, ...]:
    coeffs = [float(c) for c in _poly_coeffs_desc(poly)]
    if len(coeffs) < 2:
        return ()
    roots = np.roots(coeffs)
    ordered = sorted(
        (complex(r) for r in roots),
        key=lambda z: (round(z.real, 9), round(z.imag, 9)),
    )
    return tuple(ordered)


def mahler_height(poly: MultiPoly) -> float:
    """Degree-normalized log Mahler measure:
    (log|lead| + sum over roots of log max(1, |root|)) / deg."""
    coeffs = _poly_coeffs_desc(poly)
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("height needs a non-constant polynomial")
    total = math.log(abs(float(coeffs[0])))
    for r in _numeric_roots(poly):
        total += math.log(max(1.0, abs(r)))
    return total / d


def family_exceptional_locus(f: FamilyParams, n_max: int) -> ExceptionalLocus:
    """Parameters t where the specialized map's degrees drop, sliced by the
    root-of-unity order n = 3..n_max.

    For each n the defining polynomial is the primitive numerator of
    Psi_n(-2 - c(T)^2/(a(T)b(T))), with factors shared with a*b*c stripped
    (those parameters are degenerate and reported separately).  Orders whose
    polynomial is constant contribute no entry.  The locus where
    c^2 + 4ab = 0 never meets these entries (its 2cos value is 2, not a
    root of any Psi_n with n >= 3) and is reported on the side.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    generic = family_generic_stability(f)
    if generic.status != "GenericallyStable":
        raise ValueError("family is generically unstable; locus undefined")
    ab = f.a_poly * f.b_poly
    c2 = f.c_poly * f.c_poly
    abc = (f.a_poly * f.b_poly * f.c_poly).canonical()
    neg_w_num = -(2 * ab + c2)  # numerator of w = -2 - c^2/(ab)
    zeta_one = (c2 + 4 * ab).canonical()
    entries = []
    for n in range(3, n_max + 1):
        raw = _psi_numerator(n, neg_w_num, ab)
        if raw.is_zero():
            raise RuntimeError(f"order-{n} numerator vanished unexpectedly")
        poly = _strip_shared_factors(raw.canonical(), abc).canonical()
        if poly.is_constant():
            continue
        roots = _numeric_roots(poly)
        h = mahler_height(poly)
        entries.append(
            LocusEntry(order=n, poly=poly, roots=roots, heights=(h,) * len(roots))
        )
    return ExceptionalLocus(
        entries=tuple(entries),
        degenerate_params=_numeric_roots(abc),
        zeta_one_poly=zeta_one,
        truncation=n_max,
    )


def _squarefree_part(poly: MultiPoly) -> MultiPoly:
    if poly.degree <= 0:
        return poly.canonical()
    g = poly_gcd(poly, poly.partial(0))
    if g.is_constant():
        return poly.canonical()
    return poly_divexact(poly, g).canonical()


def _distinct_root_count(poly: MultiPoly) -> int:
    return max(_squarefree_part(poly).degree, 0)


@dataclass(frozen=True)
class PairOverlap:
    """A nontrivial common factor between order slices of two loci."""

    order_first: int
    order_second: int
    poly: MultiPoly
    distinct_roots: int


@dataclass(frozen=True)
class IntersectionReport:
    """Exact comparison of two families' truncated exceptional loci."""

    truncation: int
    phi_equal: bool  # c^2/(ab) identical as rational functions
    overlaps: tuple[PairOverlap, ...]
    first_size: int
    second_size: int
    intersection_size: int
    symmetric_difference_size: int


def same_ratio_invariant(first: FamilyParams, second: FamilyParams) -> bool:
    """Whether c^2/(ab) agrees for the two families as rational functions,
    tested by exact cross-multiplication."""
    lhs = first.c_poly * first.c_poly * (second.a_poly * second.b_poly)
    rhs = second.c_poly * second.c_poly * (first.a_poly * first.b_poly)
    return (lhs - rhs).is_zero()


def unlikely_intersection_explorer(
    first: FamilyParams, second: FamilyParams, n_max: int
) -> IntersectionReport:
    """Compare truncated exceptional loci of two generically stable families.

    Slices of one family's locus at different orders are automatically
    coprime (a parameter pins down a single 2cos value), so sizes add over
    orders and the intersection is the union of pairwise gcd root sets.
    """
    l1 = family_exceptional_locus(first, n_max)
    l2 = family_exceptional_locus(second, n_max)
    phi_equal = same_ratio_invariant(first, second)
    overlaps = []
    inter = 0
    for e1 in l1.entries:
        for e2 in l2.entries:
            g = poly_gcd(e1.poly, e2.poly)
            if g.is_constant():
                continue
            count = _distinct_root_count(g)
            inter += count
            overlaps.append(
                PairOverlap(
                    order_first=e1.order,
                    order_second=e2.order,
                    poly=g,
                    distinct_roots=count,
                )
            )
    size1 = sum(_distinct_root_count(e.poly) for e in l1.entries)
    size2 = sum(_distinct_root_count(e.poly) for e in l2.entries)
    return IntersectionReport(
        truncation=n_max,
        phi_equal=phi_equal,
        overlaps=tuple(overlaps),
        first_size=size1,
        second_size=size2,
        intersection_size=inter,
        symmetric_difference_size=size1 + size2 - 2 * inter,
    )
