"""Verification-suite harness: determinism, dispatch, reduced-size runs."""

import pytest

from dyndeg.suites import (
    SuiteResult,
    available_suites,
    fabc_grid_suite,
    gfam_suite,
    monomial_suite,
    run_suite,
    unimodular_suite,
)


class TestDispatch:
    def test_available(self):
        assert available_suites() == ("fabc-grid", "gfam", "monomial", "unimodular")

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            run_suite("nope")

    def test_count_validation(self):
        with pytest.raises(ValueError):
            monomial_suite(count=0)
        with pytest.raises(ValueError):
            unimodular_suite(count=-3)


class TestResults:
    def test_result_accounting(self):
        res = SuiteResult(name="x", total=10, passed=7, failures=("a", "b", "c"), seed=1)
        assert res.failed == 3
        assert not res.ok
        assert SuiteResult(name="x", total=2, passed=2, failures=(), seed=None).ok


class TestReducedRuns:
    def test_monomial_sample(self):
        res = monomial_suite(count=80, seed=7)
        assert res.ok and res.total == 80

    def test_monomial_deterministic(self):
        first = monomial_suite(count=20, seed=11)
        second = monomial_suite(count=20, seed=11)
        assert first == second

    def test_unimodular_sample(self):
        res = unimodular_suite(count=60, seed=5)
        assert res.ok and res.total == 60

    def test_gfam_full(self):
        res = gfam_suite()
        assert res.ok
        assert res.total == 23  # 20 grid pairs + 3 showcase parameters

    def test_fabc_small_grid(self):
        res = fabc_grid_suite(bound=2, degree_bound=1)
        assert res.ok
        assert res.total == 64

    def test_run_suite_paths(self):
        assert run_suite("monomial", count=10).ok
        assert run_suite("unimodular", count=10).ok
        assert run_suite("gfam").ok
