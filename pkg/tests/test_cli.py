"""Command-line interface: subcommands, JSON schemas, exit codes, determinism."""

import json
import math

import pytest

from dyndeg.cli import main

UNSTABLE_MAP = '{"N":2,"coords":["X*Y","X*Y+Z^2","-1*Y*Z+Z^2"]}'
STABLE_MAP = '{"N":2,"coords":["X*Y","X*Y+Z^2","Y*Z+Z^2"]}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert err == "" or code != 0
    return code, json.loads(out) if out else None


class TestDegseq:
    def test_unstable_example(self, capsys):
        code, doc = run_json(
            capsys, "degseq", "--map", UNSTABLE_MAP, "--nmax", "4"
        )
        assert code == 0
        assert doc["schema"] == 1
        assert doc["degrees"] == [2, 4, 7, 12]
        assert doc["drop_at"] == 3
        assert doc["truncated_at"] is None

    def test_stable_example(self, capsys):
        code, doc = run_json(capsys, "degseq", "--map", STABLE_MAP, "--nmax", "4")
        assert code == 0
        assert doc["degrees"] == [2, 4, 8, 16]
        assert doc["drop_at"] is None
        assert doc["root_estimate"] == pytest.approx(2.0)

    def test_default_nmax_is_five(self, capsys):
        code, doc = run_json(capsys, "degseq", "--map", STABLE_MAP)
        assert code == 0 and doc["nmax"] == 5 and len(doc["degrees"]) == 5


class TestStability:
    def test_stable_and_unstable(self, capsys):
        code, doc = run_json(capsys, "stability", "--map", STABLE_MAP, "--nmax", "4")
        assert code == 0 and doc["stable_up_to"] == 4 and doc["drop_at"] is None
        code, doc = run_json(capsys, "stability", "--map", UNSTABLE_MAP, "--nmax", "4")
        assert code == 0 and doc["stable_up_to"] is None and doc["drop_at"] == 3


class TestFabcClassify:
    def test_unstable_schema(self, capsys):
        code, doc = run_json(capsys, "fabc-classify", "-a", "1", "-b", "-1", "-c", "1")
        assert code == 0
        assert doc["status"] == "unstable"
        assert doc["zeta_order"] == 3
        assert doc["vanishing_index"] == 2

    def test_stable_schema(self, capsys):
        code, doc = run_json(capsys, "fabc-classify", "-a", "1", "-b", "1", "-c", "1")
        assert code == 0
        assert doc["status"] == "stable"
        assert doc["zeta_order"] is None

    def test_rational_inputs(self, capsys):
        code, doc = run_json(
            capsys, "fabc-classify", "-a", "1/2", "-b", "-1", "-c", "1"
        )
        assert code == 0 and doc["status"] == "unstable" and doc["zeta_order"] == 4


class TestFabcModp:
    def test_single_prime(self, capsys):
        code, doc = run_json(
            capsys, "fabc-modp", "-a", "-2", "-b", "1", "-c", "3", "-p", "7"
        )
        assert code == 0
        assert doc["p"] == 7 and doc["m"] == 2 and doc["status"] == "ExceptionalAt"

    def test_prime_table(self, capsys):
        code, doc = run_json(
            capsys, "fabc-modp", "-a", "-2", "-b", "1", "-c", "3", "--pmax", "31"
        )
        assert code == 0
        rows = {r["p"]: r for r in doc["table"]}
        assert rows[2]["status"] == "DegenerateModP"
        assert rows[3]["status"] == "DegenerateModP"
        assert rows[5]["m"] == 3
        assert rows[7]["m"] == 2
        assert rows[11]["m"] == 9
        assert rows[31]["m"] == 4

    def test_cap_exit_code(self, capsys):
        code, doc = run_json(
            capsys, "fabc-modp", "-a", "-2", "-b", "1", "-c", "3",
            "-p", "5", "--cap", "2",
        )
        assert code == 3
        assert doc["status"] == "NotFoundWithinCap"

    def test_requires_exactly_one_mode(self, capsys):
        code, _, err = run_cli(capsys, "fabc-modp", "-a", "1", "-b", "1", "-c", "1")
        assert code == 2 and "error" in err
        code, _, err = run_cli(
            capsys, "fabc-modp", "-a", "1", "-b", "1", "-c", "1",
            "-p", "5", "--pmax", "7",
        )
        assert code == 2


class TestFabcLocus:
    def test_documented_shape(self, capsys):
        code, doc = run_json(
            capsys, "fabc-locus", "-a", "1", "-b", "1", "-c", "T", "--nmax", "6"
        )
        assert code == 0
        assert doc["truncation"] == 6
        assert doc["generic_status"] == "GenericallyStable"
        first = doc["entries"][0]
        assert first["n"] == 3
        assert first["poly"] == "T^2 + 1"
        assert sorted(r["im"] for r in first["roots"]) == [-1.0, 1.0]
        assert first["heights"] == [0.0, 0.0]
        assert doc["zeta_one_poly"] == "T^2 + 4"
        # abc = T vanishes at t = 0, so that value is set aside as degenerate
        assert doc["degenerate_params"] == [{"im": 0.0, "re": 0.0}]

    def test_default_truncation_thirty(self, capsys):
        code, doc = run_json(capsys, "fabc-locus", "-a", "1", "-b", "1", "-c", "T")
        assert code == 0 and doc["truncation"] == 30

    def test_generically_unstable_family_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "fabc-locus", "-a", "1", "-b", "-1", "-c", "1"
        )
        assert code == 2 and "error" in err


class TestFabcIntersect:
    def test_same_family(self, capsys):
        code, doc = run_json(
            capsys, "fabc-intersect", "--first", "1;1;T", "--second", "1;1;T",
            "--nmax", "8",
        )
        assert code == 0
        assert doc["phi_equal"] is True
        assert doc["symmetric_difference_size"] == 0
        assert doc["intersection_size"] == doc["first_size"]

    def test_scaled_family(self, capsys):
        code, doc = run_json(
            capsys, "fabc-intersect", "--first", "1;1;T", "--second", "1;1;2*T",
            "--nmax", "8",
        )
        assert code == 0
        assert doc["phi_equal"] is False
        assert doc["intersection_size"] == 0
        assert doc["overlaps"] == []


class TestGfam:
    def test_prefix_schema(self, capsys):
        code, doc = run_json(capsys, "gfam", "-a", "1", "-b", "2", "--nmax", "6")
        assert code == 0
        assert doc["a"] == "1" and doc["b"] == "2"
        assert doc["exceptional_prefix"] == [1, 3, 5, 7, 9, 11, 13]

    def test_parameter_verdict(self, capsys):
        code, doc = run_json(
            capsys, "gfam", "-a", "1", "-b", "1", "-t", "5", "--nmax", "50"
        )
        assert code == 0
        assert doc["parameter"]["status"] == "HitsIndeterminacy"
        assert doc["parameter"]["n"] == 4
        code, doc = run_json(
            capsys, "gfam", "-a", "1", "-b", "1", "-t", "1", "--nmax", "10"
        )
        assert doc["parameter"]["status"] == "DegenerateDegreeOne"

    def test_report(self, capsys):
        code, doc = run_json(capsys, "gfam", "--report", "--nmax", "10")
        assert code == 0
        assert doc["intersection"] == [1, 3, 5, 7, 9]
        assert doc["symmetric_difference"] == [2, 4, 6, 8, 10]
        assert doc["sparse_set"] == [1, 2, 4, 8]
        assert doc["max_height"] == pytest.approx(math.log(10))

    def test_zero_multiplier(self, capsys):
        code, _, err = run_cli(capsys, "gfam", "-a", "0", "-b", "1")
        assert code == 2 and "error" in err


class TestMonomial:
    def test_full_report(self, capsys):
        code, doc = run_json(capsys, "monomial", "--matrix", "[[2,1],[1,1]]")
        assert code == 0
        assert doc["N"] == 2 and doc["D"] == 3
        assert doc["char_poly"] == [1, -3, 1]
        golden_sq = (1 + math.sqrt(5)) ** 2 / 4
        assert doc["lambda"] == pytest.approx(golden_sq, rel=1e-6)
        assert doc["lambda_interval"][0] <= golden_sq <= doc["lambda_interval"][1]
        assert doc["contraction_k"] == 0
        assert doc["norm_equivalence"] is True
        assert doc["degree_ratio_bound"]["holds"] is True
        assert doc["inverse_degree_bound"] is True

    def test_rows_wrapper_and_singular(self, capsys):
        code, doc = run_json(capsys, "monomial", "--matrix", '{"rows":[[0,1],[1,0]]}')
        assert code == 0 and doc["lambda"] == pytest.approx(1.0)
        code, _, err = run_cli(capsys, "monomial", "--matrix", "[[1,1],[1,1]]")
        assert code == 2 and "error" in err


class TestVerify:
    def test_monomial_suite_passes(self, capsys):
        code, doc = run_json(
            capsys, "verify", "--suite", "monomial", "--count", "25", "--seed", "42"
        )
        assert code == 0
        assert doc["ok"] is True
        assert doc["seed"] == 42
        assert doc["suites"][0]["passed"] == 25

    def test_gfam_suite(self, capsys):
        code, doc = run_json(capsys, "verify", "--suite", "gfam")
        assert code == 0 and doc["ok"] is True

    def test_unknown_suite(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--suite", "bogus")
        assert code == 2


class TestPlumbing:
    def test_byte_identical_determinism(self, capsys):
        args = ("verify", "--suite", "monomial", "--count", "10", "--seed", "3")
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert (code1, out1) == (code2, out2)
        args = ("fabc-locus", "-a", "1", "-b", "1", "-c", "T", "--nmax", "8")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_invalid_inputs_exit_two(self, capsys):
        assert run_cli(capsys, "degseq", "--map", "not json")[0] == 2
        assert run_cli(capsys, "degseq", "--map", '{"N":2,"coords":["X"]}')[0] == 2
        assert run_cli(capsys, "fabc-classify", "-a", "0", "-b", "1", "-c", "1")[0] == 2
        assert run_cli(capsys, "fabc-classify", "-a", "x", "-b", "1", "-c", "1")[0] == 2
        assert run_cli(capsys, "nonsense")[0] == 2
        assert run_cli(capsys, "degseq", "--map", STABLE_MAP, "--badflag")[0] == 2
        assert run_cli(capsys, "fabc-modp", "-a", "1", "-b", "1", "-c", "1", "-p", "6")[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run_cli(capsys, "--help")[0] == 0

    def test_human_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "--format", "human", "fabc-classify", "-a", "1", "-b", "-2", "-c", "2"
        )
        assert code == 0
        assert "status: unstable" in out
        assert "zeta_order: 4" in out
