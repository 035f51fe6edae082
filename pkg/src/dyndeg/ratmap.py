"""Rational self-maps of projective space with exact arithmetic.

A map is a tuple of N+1 coprime forms, homogeneous of a common degree in
the point coordinates.  Extra polynomial variables beyond the first N+1
act as symbolic parameters and ride through composition untouched.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .exactalg import (
    DomainMismatchError,
    Fp,
    MultiPoly,
    jacobian_det,
    poly_divexact,
    poly_gcd_many,
    substitute_system,
    _coerce,
)

DEFAULT_TERM_CAP = 200_000
_TERM_CAP_ENV = "DYNDEG_TERM_CAP"


def term_cap_default() -> int:
    raw = os.environ.get(_TERM_CAP_ENV)
    if raw is None:
        return DEFAULT_TERM_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_TERM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{_TERM_CAP_ENV} must be positive")
    return value


class _Indeterminate:
    """Outcome of applying a map at a point where every coordinate vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indeterminate"

    def __bool__(self):
        return False


INDETERMINATE = _Indeterminate()


class ProjectivePoint:
    """Point of projective N-space with exact scalar coordinates,
    canonicalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords", "modulus")

    def __init__(self, coords: Sequence, modulus: int | None = None):
        vals = [_coerce(c, modulus) for c in coords]
        if len(vals) < 2:
            raise ValueError("need at least two coordinates")
        pivot = next((v for v in vals if v), None)
        if pivot is None:
            raise ValueError("all coordinates are zero")
        object.__setattr__(self, "coords", tuple(v / pivot for v in vals))
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.modulus == other.modulus and self.coords == other.coords

    def __hash__(self):
        return hash((self.modulus, self.coords))

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coords)
        return f"[{inner}]"


PointLike = Union[ProjectivePoint, Sequence]


def _as_point(value: PointLike, modulus=None) -> ProjectivePoint:
    if isinstance(value, ProjectivePoint):
        return value
    return ProjectivePoint(value, modulus)


class ProjectiveMap:
    """Dominant-candidate rational self-map of P^N given by coprime forms."""

    __slots__ = ("n", "coords", "degree", "num_params", "modulus")

    def __init__(self, coords: Sequence[MultiPoly]):
        coords = tuple(coords)
        if len(coords) < 2:
            raise ValueError("need at least two coordinate forms")
        n = len(coords) - 1
        nv = coords[0].num_vars
        mod = coords[0].modulus
        for c in coords:
            if c.num_vars != nv or c.modulus != mod:
                raise DomainMismatchError("coordinate forms disagree in ring")
        if nv < n + 1:
            raise ValueError("not enough variables for the point coordinates")
        point_vars = tuple(range(n + 1))
        degrees = set()
        for c in coords:
            if c.is_zero():
                continue
            if not c.is_homogeneous_in(point_vars):
                raise ValueError("coordinate form is not homogeneous in point variables")
            degrees.add(c.degree_in_vars(point_vars))
        if not degrees:
            raise ValueError("all coordinate forms are zero")
        if len(degrees) != 1:
            raise ValueError("coordinate forms have different degrees")
        gcd = poly_gcd_many([c for c in coords])
        if not gcd.is_constant():
            coords = tuple(poly_divexact(c, gcd) for c in coords)
        coords = _canonicalize_system(coords)
        degree = next(
            c.degree_in_vars(point_vars) for c in coords if not c.is_zero()
        )
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "num_params", nv - (n + 1))
        object.__setattr__(self, "modulus", mod)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ProjectiveMap is immutable")

    def __eq__(self, other):
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        from .exactalg import format_poly

        inner = ", ".join(format_poly(c) if c.num_vars <= 3 else format_poly(
            c, var_names=tuple(f"X{i}" for i in range(c.num_vars))
        ) for c in self.coords)
        return f"ProjectiveMap([{inner}])"

    # -- operations ----------------------------------------------------------

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """self after other (apply `other` first)."""
        f, g = self, other
        if f.n != g.n or f.modulus != g.modulus:
            raise DomainMismatchError("maps live on different spaces")
        if f.coords[0].num_vars != g.coords[0].num_vars:
            raise DomainMismatchError("maps have different parameter rings")
        nv = f.coords[0].num_vars
        assignment = list(g.coords) + [
            MultiPoly.variable(nv, i, f.modulus) for i in range(f.n + 1, nv)
        ]
        return ProjectiveMap(substitute_system(f.coords, assignment))

    def apply(self, point: PointLike):
        """Evaluate at a point; returns INDETERMINATE when all forms vanish."""
        if self.num_params:
            raise ValueError("cannot apply a map with symbolic parameters to a point")
        p = _as_point(point, self.modulus)
        if p.dim != self.n:
            raise ValueError("point dimension does not match the map")
        if p.modulus != self.modulus:
            raise DomainMismatchError("point and map domains differ")
        values = [c.evaluate(p.coords) for c in self.coords]
        if not any(values):
            return INDETERMINATE
        return ProjectivePoint(values, self.modulus)

    def is_dominant(self) -> bool:
        """Exact dominance test via the Jacobian criterion.

        Only valid in characteristic zero, where a vanishing Jacobian
        determinant is equivalent to the coordinate forms being
        algebraically dependent.
        """
        if self.modulus is not None:
            raise DomainMismatchError(
                "dominance test by Jacobian rank requires characteristic zero"
            )
        j = jacobian_det(self.coords, wrt=tuple(range(self.n + 1)))
        return not j.is_zero()


def identity_map(n: int, num_params: int = 0, modulus: int | None = None) -> ProjectiveMap:
    nv = n + 1 + num_params
    return ProjectiveMap(
        [MultiPoly.variable(nv, i, modulus) for i in range(n + 1)]
    )


def _canonicalize_system(coords: tuple[MultiPoly, ...]) -> tuple[MultiPoly, ...]:
    """Scale the whole coordinate tuple by one scalar: primitive integer
    coefficients with a positive leading coefficient on the first nonzero
    coordinate (monic leading coefficient over a prime field)."""
    mod = coords[0].modulus
    first = next(c for c in coords if not c.is_zero())
    if mod is not None:
        scale = Fp(1, mod, _checked=True) / first.leading()[1]
        return tuple(c * scale for c in coords)
    denom_lcm = 1
    num_gcd = 0
    for c in coords:
        for _, coeff in c.terms:
            denom_lcm = denom_lcm * coeff.denominator // math.gcd(
                denom_lcm, coeff.denominator
            )
    for c in coords:
        for _, coeff in c.terms:
            num_gcd = math.gcd(
                num_gcd, abs(coeff.numerator * (denom_lcm // coeff.denominator))
            )
    scale = Fraction(denom_lcm, num_gcd)
    if first.leading()[1] < 0:
        scale = -scale
    return tuple(c * scale for c in coords)


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees of the reduced iterates f, f^2, ..., f^nMax.

    `truncated_at` marks the first iterate abandoned because a coordinate
    form exceeded the term cap; degrees beyond it are not reported.
    """

    degrees: tuple[int, ...]
    n_max: int
    truncated_at: int | None = None

    def __len__(self):
        return len(self.degrees)


@dataclass(frozen=True)
class DynamicalDegreeEstimate:
    root_estimate: float
    ratio_estimate: float
    n_used: int


@dataclass(frozen=True)
class Orbit:
    points: tuple[ProjectivePoint, ...]
    hit_indeterminacy_at: int | None

    @property
    def completed(self) -> bool:
        return self.hit_indeterminacy_at is None


def iter_degrees(
    f: ProjectiveMap, n_max: int, term_cap: int | None = None
) -> Iterator[int]:
    """Yield deg(f^n) for n = 1..n_max, composing f with the previous reduced
    iterate and cancelling common factors each step.  Raises _TermCapHit when
    a raw composition exceeds the term cap."""
    cap = term_cap if term_cap is not None else term_cap_default()
    yield f.degree
    current = f
    for n in range(2, n_max + 1):
        nv = f.coords[0].num_vars
        assignment = list(current.coords) + [
            MultiPoly.variable(nv, i, f.modulus) for i in range(f.n + 1, nv)
        ]
        raw = substitute_system(f.coords, assignment)
        if any(len(c.terms) > cap for c in raw):
            raise _TermCapHit(n)
        current = ProjectiveMap(raw)
        yield current.degree


class _TermCapHit(Exception):
    def __init__(self, n: int):
        super().__init__(n)
        self.n = n


def degree_sequence(
    f: ProjectiveMap, n_max: int, term_cap: int | None = None
) -> DegreeSequence:
    """Degrees of the first n_max reduced iterates, computed by composing
    f with the previous iterate and cancelling common factors each step."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    degrees: list[int] = []
    try:
        for d in iter_degrees(f, n_max, term_cap):
            degrees.append(d)
    except _TermCapHit as hit:
        return DegreeSequence(tuple(degrees), n_max, truncated_at=hit.n)
    return DegreeSequence(tuple(degrees), n_max)


def dyndeg_estimate(seq: DegreeSequence) -> DynamicalDegreeEstimate:
    """Numeric first-dynamical-degree estimates from a finite sequence:
    the n-th root of the last degree and the last consecutive ratio."""
    degs = seq.degrees
    if not degs:
        raise ValueError("empty degree sequence")
    n = len(degs)
    root = degs[-1] ** (1.0 / n)
    ratio = degs[-1] / degs[-2] if n >= 2 else float(degs[-1])
    return DynamicalDegreeEstimate(root_estimate=root, ratio_estimate=ratio, n_used=n)


def degree_drop_index(
    f: ProjectiveMap, n_max: int, term_cap: int | None = None
) -> int | None:
    """Least n <= n_max with deg(f^n) < (deg f)^n, or None if no drop is
    seen (the map is algebraically stable as far as checked).  Stops
    iterating at the first drop."""
    d = f.degree
    for i, deg_n in enumerate(iter_degrees(f, n_max, term_cap), start=1):
        if deg_n < d**i:
            return i
    return None


def orbit(f: ProjectiveMap, start: PointLike, n_max: int) -> Orbit:
    """Forward orbit [P, f(P), ...], stopping at the first point where the
    map is undefined; that index is reported as the termination reason."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    p = _as_point(start, f.modulus)
    points = [p]
    for i in range(n_max + 1):
        nxt = f.apply(points[-1])
        if nxt is INDETERMINATE:
            return Orbit(tuple(points), hit_indeterminacy_at=len(points) - 1)
        if i == n_max:
            break
        points.append(nxt)
    return Orbit(tuple(points), hit_indeterminacy_at=None)
