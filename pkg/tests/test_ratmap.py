from fractions import Fraction

import pytest

from dyndeg.exactalg import DomainMismatchError, MultiPoly, parse_poly
from dyndeg.ratmap import (
    INDETERMINATE,
    DegreeSequence,
    ProjectiveMap,
    ProjectivePoint,
    degree_drop_index,
    degree_sequence,
    dyndeg_estimate,
    identity_map,
    orbit,
)

X, Y, Z = (MultiPoly.variable(3, i) for i in range(3))


def quad_map(a, b, c):
    """The plane quadratic family [XY, XY + a*Z^2, b*YZ + c*Z^2]."""
    return ProjectiveMap([X * Y, X * Y + a * Z**2, b * Y * Z + c * Z**2])


class TestProjectivePoint:
    def test_canonical_first_nonzero_one(self):
        p = ProjectivePoint([0, 2, 4])
        assert p.coords == (Fraction(0), Fraction(1), Fraction(2))

    def test_projective_equality(self):
        assert ProjectivePoint([2, 4, 6]) == ProjectivePoint([1, 2, 3])
        assert ProjectivePoint([1, 0, 0]) != ProjectivePoint([0, 1, 0])

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint([0, 0, 0])


class TestProjectiveMapConstruction:
    def test_common_factor_cancelled(self):
        f = ProjectiveMap([X * X * Y, X * Y * Y, X * Y * Z])
        assert f.degree == 1
        assert f == identity_map(2)

    def test_joint_scaling(self):
        f = ProjectiveMap([2 * X, 2 * Y, 2 * Z])
        assert f == identity_map(2)
        g = ProjectiveMap([X * Fraction(1, 3), Y * Fraction(1, 3), Z * Fraction(1, 3)])
        assert g == identity_map(2)

    def test_relative_scaling_preserved(self):
        f = ProjectiveMap([2 * X, Y, Z])
        assert f != identity_map(2)

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            ProjectiveMap([X + X * Y, Y**2, Z**2])

    def test_mixed_degrees_rejected(self):
        with pytest.raises(ValueError):
            ProjectiveMap([X, Y**2, Z**2])

    def test_all_zero_rejected(self):
        z = MultiPoly.zero(3)
        with pytest.raises(ValueError):
            ProjectiveMap([z, z, z])

    def test_zero_coordinate_allowed(self):
        f = ProjectiveMap([X**2, MultiPoly.zero(3), Z**2])
        assert f.degree == 2

    def test_symbolic_parameters_ride_along(self):
        nv = 6
        x, y, z, a, b, c = (MultiPoly.variable(nv, i) for i in range(nv))
        f = ProjectiveMap([x * y, x * y + a * z**2, b * y * z + c * z**2])
        assert f.n == 2
        assert f.num_params == 3
        assert f.degree == 2


class TestComposeAndApply:
    def test_compose_degree_multiplies_generically(self):
        f = quad_map(1, 1, 1)
        ff = f.compose(f)
        assert ff.degree == 4

    def test_compose_with_identity(self):
        f = quad_map(2, 3, 5)
        assert f.compose(identity_map(2)) == f
        assert identity_map(2).compose(f) == f

    def test_apply_basic(self):
        f = quad_map(1, 1, 1)
        image = f.apply([1, 1, 0])
        assert image == ProjectivePoint([1, 1, 0])

    def test_apply_indeterminate(self):
        f = quad_map(1, 1, 1)
        assert f.apply([0, 1, 0]) is INDETERMINATE
        assert f.apply([1, 0, 0]) is INDETERMINATE

    def test_apply_compose_coherence(self):
        f = quad_map(1, 2, 1)
        g = quad_map(2, 1, 3)
        fg = f.compose(g)
        for coords in ([1, 2, 3], [1, 1, 2], [5, 1, 1]):
            via_compose = fg.apply(coords)
            step = g.apply(coords)
            assert step is not INDETERMINATE
            via_steps = f.apply(step)
            assert via_compose == via_steps

    def test_apply_with_params_rejected(self):
        nv = 4
        x, y, z, a = (MultiPoly.variable(nv, i) for i in range(nv))
        f = ProjectiveMap([x * y, x * y + a * z**2, y * z])
        with pytest.raises(ValueError):
            f.apply([1, 1, 1])


class TestDegreeSequences:
    def test_stable_quadratic(self):
        f = quad_map(1, 1, 1)
        seq = degree_sequence(f, 4)
        assert seq.degrees == (2, 4, 8, 16)
        assert seq.truncated_at is None

    def test_unstable_quadratic_drops_at_three(self):
        f = quad_map(1, -1, 1)
        seq = degree_sequence(f, 4)
        assert seq.degrees[0] == 2
        assert seq.degrees[1] == 4
        assert seq.degrees[2] < 8
        assert degree_drop_index(f, 4) == 3

    def test_identity_sequence(self):
        seq = degree_sequence(identity_map(2), 3)
        assert seq.degrees == (1, 1, 1)

    def test_submultiplicativity(self):
        f = quad_map(1, -2, 2)
        seq = degree_sequence(f, 6)
        degs = (1,) + seq.degrees  # prepend deg(f^0)
        for n in range(len(degs)):
            for m in range(len(degs) - n):
                assert 1 <= degs[n + m] <= degs[n] * degs[m]

    def test_term_cap_truncation(self):
        f = quad_map(1, 1, 1)
        seq = degree_sequence(f, 6, term_cap=10)
        assert seq.truncated_at is not None
        assert len(seq.degrees) < 6

    def test_estimates(self):
        seq = DegreeSequence(degrees=(2, 4, 8), n_max=3)
        est = dyndeg_estimate(seq)
        assert est.root_estimate == pytest.approx(2.0)
        assert est.ratio_estimate == pytest.approx(2.0)


class TestOrbit:
    def test_orbit_hits_indeterminacy(self):
        f = quad_map(1, -1, 1)
        result = orbit(f, [0, 0, 1], 10)
        assert result.hit_indeterminacy_at == 2
        assert result.points == (
            ProjectivePoint([0, 0, 1]),
            ProjectivePoint([0, 1, 1]),
            ProjectivePoint([0, 1, 0]),
        )
        assert not result.completed

    def test_orbit_completes(self):
        f = quad_map(1, 1, 1)
        result = orbit(f, [1, 2, 1], 3)
        assert result.completed
        assert len(result.points) == 4


class TestDominance:
    def test_quadratic_family_dominant(self):
        assert quad_map(1, 1, 1).is_dominant()
        assert quad_map(1, -1, 1).is_dominant()

    def test_symbolic_family_dominant(self):
        nv = 6
        x, y, z, a, b, c = (MultiPoly.variable(nv, i) for i in range(nv))
        f = ProjectiveMap([x * y, x * y + a * z**2, b * y * z + c * z**2])
        assert f.is_dominant()

    def test_non_dominant_map(self):
        f = ProjectiveMap([X**2, X * Y, X * Z])  # collapses to identity... scaled
        # a genuinely degenerate system: all coordinates depend on X, Y only
        g = ProjectiveMap([X**2, X * Y, Y**2])
        assert not g.is_dominant()

    def test_prime_field_rejected(self):
        x, y, z = (MultiPoly.variable(3, i, modulus=7) for i in range(3))
        f = ProjectiveMap([x * y, x * y + z**2, y * z])
        with pytest.raises(DomainMismatchError):
            f.is_dominant()


class TestPrimeFieldMaps:
    def test_normalization_monic(self):
        x, y, z = (MultiPoly.variable(3, i, modulus=5) for i in range(3))
        f = ProjectiveMap([3 * x, 3 * y, 3 * z])
        assert f == identity_map(2, modulus=5)

    def test_degree_sequence_mod_p(self):
        x, y, z = (MultiPoly.variable(3, i, modulus=5) for i in range(3))
        f = ProjectiveMap([x * y, x * y + z**2, y * z + z**2])
        seq = degree_sequence(f, 3)
        assert seq.degrees[0] == 2
