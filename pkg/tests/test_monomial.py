"""Monomial-map degrees, spectral radii, and inequality checks."""

import math
import random
from fractions import Fraction

import pytest

from dyndeg.exactalg import MultiPoly
from dyndeg.monomial import (
    LowerBoundCheck,
    MonomialMap,
    SingularMatrixError,
    analyze,
    char_poly,
    degree_D,
    degree_ratio_lower_bound,
    find_k_contraction,
    find_m_epsilon,
    full_report,
    homogenize,
    identity_rows,
    int_det,
    inverse_degree_bound_check,
    inverse_map,
    mat_mul,
    mat_pow,
    power,
    spectral_radius,
    spectral_radius_enclosure,
    sup_norm,
    _degree_of_rows,
    _roots_strictly_inside,
)

GOLDEN = (3 + math.sqrt(5)) / 2  # max root of x^2 - 3x + 1
A21 = MonomialMap([[2, 1], [1, 1]])
IDENT2 = MonomialMap([[1, 0], [0, 1]])


class TestMatrixBasics:
    def test_det_exact(self):
        assert int_det([[2, 1], [1, 1]]) == 1
        assert int_det([[1, 2], [2, 4]]) == 0
        assert int_det([[0, 1], [-1, 0]]) == 1
        assert int_det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30

    def test_det_needs_pivot_swap(self):
        assert int_det([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == -1

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            MonomialMap([[1, 2], [2, 4]])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            MonomialMap([[1, 2, 3], [4, 5, 6]])

    def test_mat_pow(self):
        assert mat_pow([[2, 1], [1, 1]], 0) == identity_rows(2)
        assert mat_pow([[2, 1], [1, 1]], 2) == ((5, 3), (3, 2))
        a = [[1, 2], [3, 4]]
        assert mat_pow(a, 3) == mat_mul(a, mat_mul(a, a))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            A21.n = 5


class TestDegree:
    def test_identity(self):
        assert degree_D(IDENT2) == 1

    def test_frozen_examples(self):
        assert degree_D(A21) == 3
        assert degree_D(MonomialMap([[-1, 0], [0, -1]])) == 2
        assert degree_D(MonomialMap([[0, 1], [1, 0]])) == 1

    def test_power_of_identity_rows(self):
        assert _degree_of_rows(identity_rows(3)) == 1

    def test_power_degree(self):
        assert degree_D(power(A21, 2)) == 8


class TestHomogenize:
    def test_identity(self):
        f = homogenize(IDENT2)
        x, y, z = (MultiPoly.variable(3, i) for i in range(3))
        assert f.coords == (x, y, z)

    def test_quadratic_involution(self):
        f = homogenize(MonomialMap([[-1, 0], [0, -1]]))
        x, y, z = (MultiPoly.variable(3, i) for i in range(3))
        assert f.coords == (y * z, x * z, x * y)

    def test_frozen_example(self):
        f = homogenize(A21)
        x, y, z = (MultiPoly.variable(3, i) for i in range(3))
        assert f.coords == (x**2 * y, x * y * z, z**3)

    def test_swap(self):
        f = homogenize(MonomialMap([[0, 1], [1, 0]]))
        x, y, z = (MultiPoly.variable(3, i) for i in range(3))
        assert f.coords == (y, x, z)

    def test_degree_cross_check_random(self):
        rng = random.Random(1234)
        for _ in range(60):
            n = rng.randint(1, 3)
            while True:
                rows = [
                    [rng.randint(-4, 4) for _ in range(n)] for _ in range(n)
                ]
                if int_det(rows) != 0:
                    break
            m = MonomialMap(rows)
            assert homogenize(m).degree == degree_D(m)


class TestCharPoly:
    def test_frozen_examples(self):
        assert char_poly(A21) == [1, -3, 1]
        assert char_poly(IDENT2) == [1, -2, 1]
        assert char_poly(MonomialMap([[0, 1], [-1, 0]])) == [1, 0, 1]

    def test_constant_term_is_signed_det(self):
        rng = random.Random(77)
        for _ in range(25):
            n = rng.randint(1, 5)
            while True:
                rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                if int_det(rows) != 0:
                    break
            m = MonomialMap(rows)
            assert char_poly(m)[-1] == (-1) ** n * m.det


class TestDiskTest:
    def test_unit_examples(self):
        # z - 2: root outside
        assert not _roots_strictly_inside([1, -2], Fraction(1))
        # 2z - 1: root 1/2 inside
        assert _roots_strictly_inside([2, -1], Fraction(1))
        # z^2 + 1: roots on the circle are not strictly inside
        assert not _roots_strictly_inside([1, 0, 1], Fraction(1))
        assert _roots_strictly_inside([1, 0, 1], Fraction(11, 10))

    def test_radius_scaling(self):
        # roots 2 and 3
        p = [1, -5, 6]
        assert not _roots_strictly_inside(p, Fraction(3))
        assert _roots_strictly_inside(p, Fraction(31, 10))

    def test_mixed_roots(self):
        # roots 1/2 and 3
        assert not _roots_strictly_inside([2, -7, 3], Fraction(1))
        assert _roots_strictly_inside([2, -7, 3], Fraction(4))


class TestSpectralRadius:
    def test_golden_like_value(self):
        enc = spectral_radius_enclosure(A21, 1e-6)
        assert abs(enc.value - GOLDEN) / GOLDEN <= 1e-6
        assert float(enc.low) <= GOLDEN <= float(enc.high)
        assert enc.high <= enc.low * (1 + 2e-6)

    def test_identity(self):
        assert abs(spectral_radius(IDENT2) - 1.0) <= 1e-5

    def test_rotation(self):
        assert abs(spectral_radius(MonomialMap([[0, 1], [-1, 0]])) - 1.0) <= 1e-5

    def test_rel_tol_validation(self):
        with pytest.raises(ValueError):
            spectral_radius(A21, 0.0)
        with pytest.raises(ValueError):
            spectral_radius(A21, 2e-3)

    def test_radius_of_powers(self):
        lam = spectral_radius(A21)
        for k in range(1, 5):
            lam_k = spectral_radius(power(A21, k))
            assert abs(lam_k - lam**k) / lam**k <= 1e-4

    def test_degree_growth_matches_radius(self):
        # D(A^12)^(1/12) within 2% of the spectral radius
        d12 = _degree_of_rows(mat_pow(A21.matrix, 12))
        assert abs(d12 ** (1 / 12) - 2.618034) / 2.618034 <= 0.02


class TestNormEquivalence:
    def test_frozen_examples(self):
        assert sup_norm(A21.matrix) == 2
        assert verify_all(A21)
        assert verify_all(IDENT2)
        assert verify_all(MonomialMap([[-1, 0], [0, -1]]))

    def test_random(self):
        rng = random.Random(5150)
        for _ in range(200):
            n = rng.randint(1, 5)
            while True:
                rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                if int_det(rows) != 0:
                    break
            assert verify_all(MonomialMap(rows))


def verify_all(m: MonomialMap) -> bool:
    from dyndeg.monomial import verify_norm_equivalence

    return verify_norm_equivalence(m)


class TestContractionIndex:
    def test_frozen_examples(self):
        assert find_k_contraction(A21) == 0
        assert find_k_contraction(IDENT2) == 0

    def test_exhaustive_cross_check(self):
        m = MonomialMap([[3, -2], [1, 0]])
        k = find_k_contraction(m)
        lam = spectral_radius(m)
        factor = 2 ** (1 / 2) - 1
        norms = [sup_norm(mat_pow(m.matrix, j)) for j in range(3)]
        assert k in (0, 1)
        assert norms[k + 1] * factor <= lam * (1 + 2e-6) * norms[k]
        for j in range(k):
            assert norms[j + 1] * factor > lam * (1 + 2e-6) * norms[j]


class TestDegreeRatioBound:
    def test_frozen_example(self):
        res = degree_ratio_lower_bound(A21)
        assert isinstance(res, LowerBoundCheck)
        assert res.holds
        assert abs(res.rhs - 0.1381) <= 1e-3
        assert abs(res.lhs - GOLDEN) <= 1e-4

    def test_identity(self):
        res = degree_ratio_lower_bound(IDENT2)
        assert res.holds
        assert abs(res.rhs - (2 ** 0.5 - 1) / 8) <= 1e-9


class TestInverseBound:
    def test_frozen_inverse(self):
        inv = inverse_map(A21)
        assert inv.matrix == ((1, -1), (-1, 2))
        assert degree_D(inv) == 3
        assert inverse_degree_bound_check(A21)

    def test_identity(self):
        assert inverse_degree_bound_check(IDENT2)

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError):
            inverse_degree_bound_check(MonomialMap([[2, 0], [0, 1]]))

    def test_det_minus_one(self):
        m = MonomialMap([[0, 1], [1, 0]])
        inv = inverse_map(m)
        assert mat_mul(inv.matrix, m.matrix) == identity_rows(2)


class TestFindM:
    def test_identity_eps_09(self):
        assert find_m_epsilon(IDENT2, 0.9) == 2

    def test_identity_eps_05(self):
        assert find_m_epsilon(IDENT2, 0.5) == 5

    def test_frozen_example_revalidated(self):
        m = find_m_epsilon(A21, 1.0)
        assert m is not None
        lam = spectral_radius(A21)
        gamma = (2 ** 0.5 - 1) / 8
        for mm in range(1, m + 1):
            ok = True
            for k in range(2):
                dk = _degree_of_rows(mat_pow(A21.matrix, k * mm)) if k * mm else 1
                dk1 = _degree_of_rows(mat_pow(A21.matrix, (k + 1) * mm))
                if (gamma * dk1 / dk) ** (1 / mm) < lam - 1.0:
                    ok = False
                    break
            assert ok == (mm == m)

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            find_m_epsilon(IDENT2, 0.0)

    def test_cap_returns_none(self):
        assert find_m_epsilon(A21, 1e-9, m_cap=1) is None


class TestReports:
    def test_analyze(self):
        data = analyze(A21)
        assert data.n == 2
        assert data.degree == 3
        assert data.sup_norm == 2
        assert data.char_poly == (1, -3, 1)
        assert abs(data.radius.value - GOLDEN) <= 1e-5

    def test_full_report_shape(self):
        rep = full_report(A21)
        assert rep["N"] == 2
        assert rep["D"] == 3
        assert rep["sup_norm"] == 2
        assert rep["char_poly"] == [1, -3, 1]
        assert rep["norm_equivalence"] is True
        assert rep["contraction_k"] == 0
        assert rep["degree_ratio_bound"]["holds"] is True
        assert rep["inverse_degree_bound"] is True

    def test_full_report_non_unimodular(self):
        rep = full_report(MonomialMap([[2, 0], [0, 1]]))
        assert rep["inverse_degree_bound"] is None
