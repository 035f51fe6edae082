"""A quadratic plane family whose unstable parameters form a marked orbit.

The family is

    g_t([X, Y, Z]) = [(aX + bZ)(X - tZ) + (X - Z)Y,  (X - Z)Y,  (X - tZ)Z]

with a fixed nonzero multiplier ``a`` and shift ``b``.  For t != 1 each
member is a degree-2 birational self-map of the plane with indeterminacy
points [0, 1, 0] and [t, 0, 1]; at t = 1 the three forms share the
factor X - Z and the map collapses to a linear one.

The lines Y = 0 and Z = 0 are invariant, and on Y = 0 the map acts by
[X, 0, Z] -> [aX + bZ, 0, Z].  The marked point [1, 0, 1] therefore has
the exact orbit [e_n, 0, 1] with

    e_0 = 1,   e_{n+1} = a * e_n + b,

i.e. e_n = a^n + b(a^{n-1} + ... + a + 1).  Degree growth of g_t fails
precisely when this orbit reaches the indeterminacy point [t, 0, 1], so
the set of unstable parameter values is {e_n : n >= 0} — an explicit,
infinite set of unbounded height.  Choosing (a, b) = (1, 1) and (1, 2)
gives two families whose unstable sets are the positive integers and
the odd positive integers: infinite intersection and infinite symmetric
difference at once, which is what ``negative_answer_report`` tabulates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactalg import MultiPoly
from .ratmap import INDETERMINATE, ProjectiveMap, ProjectivePoint

__all__ = [
    "GFamilyParams",
    "HitsIndeterminacyAt",
    "NoHitWithin",
    "ParameterVerdict",
    "NegativeAnswerReport",
    "build_g",
    "exceptional_set",
    "exact_membership",
    "orbit_marked_point",
    "classify_parameter",
    "indeterminacy_points",
    "marked_point",
    "negative_answer_report",
]

Rational = Union[int, Fraction]


def _frac(value: Rational, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"{what} must be an exact rational, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class GFamilyParams:
    """Multiplier/shift pair (a, b) with a != 0."""

    a: Fraction
    b: Fraction

    def __init__(self, a: Rational, b: Rational):
        object.__setattr__(self, "a", _frac(a, "a"))
        object.__setattr__(self, "b", _frac(b, "b"))
        if self.a == 0:
            raise ValueError("the multiplier a must be nonzero")


def build_g(p: GFamilyParams, t: Rational) -> ProjectiveMap:
    """The member of the family at parameter value t.

    Degree 2 for t != 1; at t = 1 the common factor X - Z cancels and
    the returned map is linear.
    """
    t = _frac(t, "t")
    x, y, z = (MultiPoly.variable(3, i) for i in range(3))
    a, b = p.a, p.b
    return ProjectiveMap(
        [
            (a * x + b * z) * (x - t * z) + (x - z) * y,
            (x - z) * y,
            (x - t * z) * z,
        ]
    )


def marked_point() -> ProjectivePoint:
    """The point on Y = 0 whose orbit witnesses every degree drop."""
    return ProjectivePoint([1, 0, 1])


def indeterminacy_points(p: GFamilyParams, t: Rational) -> frozenset[ProjectivePoint]:
    """The verified indeterminacy points of the member at t.

    Candidates [0, 1, 0] and [t, 0, 1] are kept only if every coordinate
    form actually vanishes there, so the degenerate t = 1 member (which
    is linear, hence everywhere defined) yields the empty set.
    """
    t = _frac(t, "t")
    g = build_g(p, t)
    candidates = (ProjectivePoint([0, 1, 0]), ProjectivePoint([t, 0, 1]))
    return frozenset(q for q in candidates if g.apply(q) is INDETERMINATE)


def exceptional_set(p: GFamilyParams, n_max: int) -> list[Fraction]:
    """First n_max + 1 unstable parameter values e_0, ..., e_{n_max}.

    e_0 = 1 and e_{n+1} = a*e_n + b, equivalently
    e_n = a^n + b(a^{n-1} + ... + a + 1).
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    values = [Fraction(1)]
    for _ in range(n_max):
        values.append(p.a * values[-1] + p.b)
    return values


def exact_membership(p: GFamilyParams, t: Rational) -> bool | None:
    """Decide t in {e_n : n >= 0} in closed form, or None when that is
    out of reach.

    For a = 1 the orbit is the arithmetic progression 1, 1+b, 1+2b, ...,
    so membership is (t - 1)/b being a nonnegative integer (t == 1 when
    b = 0).  Other multipliers fall back to truncated search via
    ``orbit_marked_point``.
    """
    t = _frac(t, "t")
    if p.a != 1:
        return None
    if p.b == 0:
        return t == 1
    steps = (t - 1) / p.b
    return steps.denominator == 1 and steps >= 0


@dataclass(frozen=True)
class HitsIndeterminacyAt:
    """The marked orbit reached [t, 0, 1] after n steps."""

    n: int


@dataclass(frozen=True)
class NoHitWithin:
    """The marked orbit avoided [t, 0, 1] for all n <= n_max."""

    n_max: int


OrbitOutcome = Union[HitsIndeterminacyAt, NoHitWithin]


def orbit_marked_point(p: GFamilyParams, t: Rational, n_max: int) -> OrbitOutcome:
    """Iterate the actual map on [1, 0, 1] and report the least n with
    g_t^n([1, 0, 1]) = [t, 0, 1], if one exists with n <= n_max.

    Every step is cross-checked against the closed form [e_n, 0, 1]; a
    mismatch would mean the recurrence and the map disagree and raises
    RuntimeError.
    """
    t = _frac(t, "t")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    g = build_g(p, t)
    target = ProjectivePoint([t, 0, 1])
    track = exceptional_set(p, n_max)
    current = marked_point()
    for n in range(n_max + 1):
        if current != ProjectivePoint([track[n], 0, 1]):
            raise RuntimeError(
                f"marked orbit left its predicted track at step {n}"
            )
        if current == target:
            return HitsIndeterminacyAt(n)
        if n == n_max:
            break
        nxt = g.apply(current)
        if nxt is INDETERMINATE:
            raise RuntimeError(
                f"marked orbit hit an unexpected indeterminate point at step {n}"
            )
        current = nxt
    return NoHitWithin(n_max)


@dataclass(frozen=True)
class ParameterVerdict:
    """How the member at one parameter value loses (or keeps) degree 2.

    status is one of:
      - "DegenerateDegreeOne": t = 1, the map itself is linear;
      - "HitsIndeterminacy": the marked orbit lands on [t, 0, 1] at
        step ``n`` (degree growth fails);
      - "NoHitWithin": no collision found up to the truncation.
    """

    status: str
    n: int | None
    n_max: int


def classify_parameter(p: GFamilyParams, t: Rational, n_max: int) -> ParameterVerdict:
    t = _frac(t, "t")
    if t == 1:
        return ParameterVerdict(status="DegenerateDegreeOne", n=None, n_max=n_max)
    outcome = orbit_marked_point(p, t, n_max)
    if isinstance(outcome, HitsIndeterminacyAt):
        return ParameterVerdict(status="HitsIndeterminacy", n=outcome.n, n_max=n_max)
    return ParameterVerdict(status="NoHitWithin", n=None, n_max=n_max)


def _truncated_values(p: GFamilyParams, bound: int) -> tuple[int, ...]:
    """Members of {e_n} lying in [1, bound], as a sorted tuple.

    The scan length max(64, 4*bound) covers oscillating multipliers; for
    the monotone report families it is far more than enough.
    """
    cap = max(64, 4 * bound)
    keep = {
        int(v)
        for v in exceptional_set(p, cap)
        if v.denominator == 1 and 1 <= v <= bound
    }
    return tuple(sorted(keep))


@dataclass(frozen=True)
class NegativeAnswerReport:
    """Truncated unstable-parameter sets for the three showcase families.

    linear_set is {e_n} for (a, b) = (1, 1) — all positive integers;
    odd_set is (1, 2) — the odd ones; sparse_set is (2, 0) — powers of
    two.  The intersection of the first two is infinite (all odds) while
    their symmetric difference is infinite too (all evens), and the
    naive heights log e_n grow without bound — recorded here up to the
    truncation.
    """

    n_max: int
    linear_set: tuple[int, ...]
    odd_set: tuple[int, ...]
    sparse_set: tuple[int, ...]
    intersection: tuple[int, ...]
    symmetric_difference: tuple[int, ...]
    heights: tuple[float, ...]
    max_height: float


def negative_answer_report(n_max: int) -> NegativeAnswerReport:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    linear = _truncated_values(GFamilyParams(1, 1), n_max)
    odd = _truncated_values(GFamilyParams(1, 2), n_max)
    sparse = _truncated_values(GFamilyParams(2, 0), n_max)
    heights = tuple(math.log(v) for v in linear)
    return NegativeAnswerReport(
        n_max=n_max,
        linear_set=linear,
        odd_set=odd,
        sparse_set=sparse,
        intersection=tuple(sorted(set(linear) & set(odd))),
        symmetric_difference=tuple(sorted(set(linear) ^ set(odd))),
        heights=heights,
        max_height=max(heights),
    )
