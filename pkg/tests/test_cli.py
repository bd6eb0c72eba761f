import json
import subprocess
import sys

import pytest

from structgrade.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    main,
    run,
)
from conftest import cyclic_table


def ok(argv):
    status, text = run(argv)
    assert status == EXIT_OK, text
    return text


class TestAnalyze:
    def test_complete4_z6(self):
        text = ok(["analyze", "--catalog", "complete:4", "--group", "Z6"])
        assert "hom_count: 216" in text
        assert "rank: 9" in text
        assert "certified: yes" in text

    def test_rp2_z4(self):
        text = ok(["analyze", "--catalog", "rp2_surrogate", "--group", "Z4"])
        assert f"hom_count: {2 * 4 ** 30}" in text
        assert "certified: no" in text
        assert "nonexistence_proved: yes" in text

    def test_json_mode_and_round_trip(self):
        text = ok(["analyze", "--catalog", "complete:4", "--group", "Z6", "--json"])
        payload = json.loads(text)
        assert payload["hom_count"] == "216"
        assert payload["snf"]["rank"] == 9
        assert payload["grading_set"]["size"] == 3
        rerendered = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        assert rerendered == text

    def test_prime_section(self):
        text = ok(["analyze", "--catalog", "complete:3", "--group", "Z2",
                   "--prime", "2", "--json"])
        payload = json.loads(text)
        assert payload["mod_p"]["p"] == 2
        assert payload["mod_p"]["size"] == 2

    def test_dump_matrix(self, tmp_path):
        path = tmp_path / "matrix.txt"
        text = ok(["analyze", "--catalog", "chain:3", "--group", "Z2",
                   "--dump-matrix", str(path)])
        assert str(path) in text
        assert path.read_text() == "1 3\n# columns: 1->2 1->3 2->3\n1 -1 1\n"

    def test_graph_file_with_closure(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("# chain\nvertices 3\narrow 1 2\narrow 2 3\n")
        text = ok(["analyze", "--graph", str(path), "--closure", "--group", "Z5"])
        assert "hom_count: 25" in text

    def test_deterministic_output(self):
        argv = ["analyze", "--catalog", "rp2_surrogate", "--group", "Z6", "--json"]
        assert ok(argv) == ok(argv)

    def test_non_transitive_is_validation_failure(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("vertices 3\narrow 1 2\narrow 2 3\n")
        status, text = run(["analyze", "--graph", str(path), "--group", "Z2"])
        assert status == EXIT_VALIDATION
        assert "not transitive" in text

    def test_bad_graph_file_is_validation_failure(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("vertices 2\narrow 9 1\n")
        status, text = run(["analyze", "--graph", str(path), "--group", "Z2"])
        assert status == EXIT_VALIDATION

    def test_cayley_group_rejected_for_analyze(self, tmp_path):
        path = tmp_path / "z2.txt"
        path.write_text("order 2\n0 1\n1 0\n")
        status, _ = run(["analyze", "--catalog", "complete:3", "--cayley", str(path)])
        assert status == EXIT_USAGE


class TestEnumerate:
    def test_k3_z2_with_emission(self, tmp_path):
        path = tmp_path / "homs.txt"
        text = ok(["enumerate", "--catalog", "complete:3", "--group", "Z2",
                   "--emit-homs", str(path)])
        assert "hom_count: 4" in text
        assert "elementary_count: 4" in text
        lines = path.read_text().splitlines()
        assert len(lines) == 4
        assert lines[0] == (
            "1->1=(0) 1->2=(0) 1->3=(0) 2->1=(0) 2->2=(0) "
            "2->3=(0) 3->1=(0) 3->2=(0) 3->3=(0)"
        )

    def test_cayley_group(self, tmp_path):
        path = tmp_path / "z3.txt"
        rows = ["order 3"] + [" ".join(str(x) for x in row) for row in cyclic_table(3)]
        path.write_text("\n".join(rows) + "\n")
        text = ok(["enumerate", "--catalog", "complete:2", "--cayley", str(path)])
        assert "hom_count: 3" in text

    def test_budget_exit_code(self):
        status, text = run(["enumerate", "--catalog", "complete:4", "--group", "Z4",
                            "--budget", "2"])
        assert status == EXIT_BUDGET
        assert "budget" in text


class TestOrbits:
    def test_k3_z2(self):
        text = ok(["orbits", "--catalog", "complete:3", "--group", "Z2"])
        assert "orbit_count: 2" in text
        assert "automorphisms: 6" in text

    def test_k4_z2_json(self):
        payload = json.loads(
            ok(["orbits", "--catalog", "complete:4", "--group", "Z2", "--json"])
        )
        assert payload["orbits"]["orbit_count"] == "3"


class TestKnCount:
    def test_numeric(self):
        assert "count: 3" in ok(["kn-count", "--n", "4", "--group", "Z2"])

    def test_symbolic(self):
        text = ok(["kn-count", "--n", "6", "--group", "Z2", "--symbolic"])
        assert "85" in text and "210" in text and "120*|ord_6(G)|" in text

    def test_out_of_range_is_usage_error(self):
        status, _ = run(["kn-count", "--n", "40", "--group", "Z2"])
        assert status == EXIT_USAGE


class TestVerifyGradingSet:
    def test_explicit_arrows(self):
        text = ok(["verify-grading-set", "--catalog", "complete:3", "--group", "Z4",
                   "--arrows", "1-2,1-3"])
        assert "ok: yes" in text

    def test_arrow_syntax_variants(self):
        text = ok(["verify-grading-set", "--catalog", "complete:3", "--group", "Z2",
                   "--arrows", "1->2,1->3"])
        assert "ok: yes" in text

    def test_from_prime(self):
        text = ok(["verify-grading-set", "--catalog", "chain:3", "--group", "Z3",
                   "--prime", "3"])
        assert "ok: yes" in text

    def test_failing_set(self):
        text = ok(["verify-grading-set", "--catalog", "complete:3", "--group", "Z2",
                   "--arrows", "1-2"])
        assert "ok: no" in text

    def test_requires_arrows_or_prime(self):
        status, _ = run(["verify-grading-set", "--catalog", "complete:3",
                         "--group", "Z2"])
        assert status == EXIT_USAGE


class TestCheckCorollary:
    def test_z6_p5(self):
        text = ok(["check-corollary", "--prime", "5", "--group", "Z6"])
        assert "holds: yes" in text

    def test_composite_p(self):
        status, _ = run(["check-corollary", "--prime", "6", "--group", "Z2"])
        assert status == EXIT_USAGE


class TestCatalogCommand:
    def test_listing(self):
        text = ok(["catalog"])
        for name in ("complete", "chain", "antichain", "rp2_surrogate"):
            assert name in text


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["analyze", "--catalog", "complete:3"],                        # no group
            ["analyze", "--group", "Z2"],                                  # no digraph
            ["analyze", "--catalog", "complete:3", "--group", "Z0"],
            ["analyze", "--catalog", "nosuch:3", "--group", "Z2"],
            ["analyze", "--catalog", "complete:x", "--group", "Z2"],
            ["analyze", "--catalog", "complete:3", "--group", "Z2", "--prime", "4"],
            ["analyze", "--graph", "a", "--catalog", "complete:3", "--group", "Z2"],
        ],
    )
    def test_exit_one(self, argv):
        status, _ = run(argv)
        assert status == EXIT_USAGE

    def test_conflicting_group_flags(self, tmp_path):
        path = tmp_path / "z2.txt"
        path.write_text("order 2\n0 1\n1 0\n")
        status, _ = run(["enumerate", "--catalog", "complete:2", "--group", "Z2",
                         "--cayley", str(path)])
        assert status == EXIT_USAGE

    def test_bad_cayley_file_is_validation_failure(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("order 2\n0 0\n1 1\n")
        status, _ = run(["enumerate", "--catalog", "complete:2", "--cayley", str(path)])
        assert status == EXIT_VALIDATION


def test_main_writes_report_to_stdout(capsys):
    status = main(["kn-count", "--n", "2", "--group", "Z2"])
    captured = capsys.readouterr()
    assert status == 0
    assert "count: 2" in captured.out


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "structgrade", "kn-count", "--n", "3", "--group", "Z3"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "count: 4" in result.stdout


def test_cross_process_determinism():
    argv = [sys.executable, "-m", "structgrade", "analyze",
            "--catalog", "rp2_surrogate", "--group", "Z6", "--json"]
    first = subprocess.run(argv, capture_output=True).stdout
    second = subprocess.run(argv, capture_output=True).stdout
    assert first == second
    assert json.loads(first)["hom_count"] == str(2 * 6 ** 30)
