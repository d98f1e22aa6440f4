"""End-to-end command-line behavior, including exit codes and JSON output."""
import json

import pytest

from fischerlab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCatalog:
    def test_list_text(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        assert "symmetric" in out and "weyl" in out

    def test_list_json(self, capsys):
        code, out, _ = run(capsys, "catalog", "list", "--json")
        rows = json.loads(out)
        assert code == 0
        assert {"family", "params", "example"} <= set(rows[0])
        assert len(rows) == 5


class TestAnalyze:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "analyze", "symmetric:n=4")
        assert code == 0
        assert "group order       24" in out
        assert "symplectic type" in out
        assert "axioms          pass" in out
        assert "timing" in out

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "analyze", "symmetric:n=4", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["group_order"] == 24
        assert payload["class_size"] == 6
        assert payload["components"] == [{"size": 6, "valency": 4}]
        assert payload["matsuo"]["alpha"] == "1/2"
        assert payload["matsuo"]["radical_dimension"] == 0
        assert payload["matsuo"]["spectra"]["verdict"] == "pass"
        assert "timing" not in out

    def test_json_to_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "analyze", "symmetric:n=3", "--json", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["group_order"] == 6

    def test_custom_parameters(self, capsys):
        code, out, _ = run(
            capsys, "analyze", "symmetric:n=4",
            "--alpha", "2/5", "--beta", "4/5", "--json",
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["matsuo"]["alpha"] == "2/5"
        assert payload["matsuo"]["beta"] == "4/5"

    def test_degenerate_alpha_spectra_not_run(self, capsys):
        code, out, _ = run(capsys, "analyze", "symmetric:n=3", "--alpha", "2", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["matsuo"]["spectra"]["verdict"] == "not-run"
        assert payload["matsuo"]["spectra"]["reason"] == "degenerate-alpha"

    def test_exports(self, capsys, tmp_path):
        dot = tmp_path / "graph.dot"
        gram = tmp_path / "gram.csv"
        code, _, _ = run(
            capsys, "analyze", "symmetric:n=3",
            "--dot", str(dot), "--gram", str(gram),
        )
        assert code == 0
        assert dot.read_text().startswith("graph fischer {")
        assert gram.read_text().splitlines()[0].count(",") == 2

    def test_unknown_family_is_usage_error(self, capsys):
        code, _, err = run(capsys, "analyze", "unitary:n=4")
        assert code == 2
        assert "unknown family" in err

    def test_axis_cap_exit_code(self, capsys):
        code, _, err = run(capsys, "analyze", "symmetric:n=6", "--max-axes", "10")
        assert code == 3
        assert "cap" in err

    def test_order_cap_exit_code(self, capsys):
        code, _, _ = run(capsys, "analyze", "symmetric:n=6", "--max-order", "100")
        assert code == 3

    def test_threads_flag_accepted(self, capsys):
        baseline = run(capsys, "analyze", "symmetric:n=4", "--json")
        threaded = run(capsys, "analyze", "symmetric:n=4", "--threads", "4", "--json")
        assert baseline == threaded

    def test_repeat_runs_identical(self, capsys):
        first = run(capsys, "analyze", "symmetric:n=5", "--json")
        second = run(capsys, "analyze", "symmetric:n=5", "--json")
        assert first == second


class TestFusion:
    def test_pair_query(self, capsys):
        code, out, _ = run(
            capsys, "fusion", "--m", "1", "--left", "1,2", "--right", "1,2", "--json"
        )
        payload = json.loads(out)
        assert code == 0
        labels = [(row["r"], row["s"]) for row in payload["product"]]
        assert labels == [(1, 1), (1, 3)]

    def test_grid_with_membership(self, capsys):
        code, out, _ = run(
            capsys, "fusion", "--m", "2", "--grid", "--contains", "7/10", "--json"
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["central_charge"] == "7/10"
        assert payload["contains"]["present"] is False
        assert len(payload["labels"]) == 6

    def test_sector(self, capsys):
        code, out, _ = run(capsys, "fusion", "--m", "1", "--sector", "--json")
        payload = json.loads(out)
        assert code == 0
        assert [(row["r"], row["s"]) for row in payload["sector"]] == [(1, 1), (1, 3)]
        assert [row["sigma_sign"] for row in payload["sector"]] == [1, -1]

    def test_out_of_range_label(self, capsys):
        code, _, err = run(
            capsys, "fusion", "--m", "1", "--left", "9,9", "--right", "1,1"
        )
        assert code == 2
        assert "out of range" in err

    def test_missing_operand(self, capsys):
        code, _, _ = run(capsys, "fusion", "--m", "2", "--left", "1,1")
        assert code == 2

    def test_malformed_label(self, capsys):
        code, _, _ = run(capsys, "fusion", "--m", "2", "--left", "11", "--right", "1,1")
        assert code == 2


class TestSakuma:
    def test_tag_lookup(self, capsys):
        code, out, _ = run(capsys, "sakuma", "3A", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload == [
            {
                "type": "3A",
                "max_tau_order": 3,
                "inner_product": "13/1024",
                "inner_product_times_1024": 13,
                "griess_dim": 4,
                "ising_count": 3,
                "miyamoto_kind": "tau",
            }
        ]

    def test_inner_lookup_ambiguous(self, capsys):
        code, out, _ = run(capsys, "sakuma", "--inner", "1/256", "--json")
        payload = json.loads(out)
        assert code == 0
        assert [row["type"] for row in payload] == ["4B", "3C"]
        assert all(row["ambiguous"] for row in payload)

    def test_unknown_tag(self, capsys):
        code, _, err = run(capsys, "sakuma", "9Z")
        assert code == 2
        assert "unknown" in err

    def test_requires_one_mode(self, capsys):
        assert run(capsys, "sakuma")[0] == 2
        assert run(capsys, "sakuma", "2A", "--inner", "1/32")[0] == 2


class TestJsonRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ["catalog", "list", "--json"],
            ["analyze", "symmetric:n=4", "--json"],
            ["fusion", "--m", "2", "--grid", "--json"],
            ["sakuma", "--inner", "1/256", "--json"],
        ],
    )
    def test_reserialization_is_byte_identical(self, capsys, argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


class TestReportSchema:
    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", "symmetric:n=5", "--json"],
            ["analyze", "orthogonal-f3:dim=3", "--json"],
            ["analyze", "symmetric:n=4", "--alpha", "0", "--json"],
        ],
    )
    def test_report_validates(self, capsys, argv):
        jsonschema = pytest.importorskip("jsonschema")
        from pathlib import Path

        schema = json.loads(
            (Path(__file__).parent.parent / "docs" / "report.schema.json").read_text()
        )
        code, out, _ = run(capsys, *argv)
        assert code == 0
        jsonschema.validate(json.loads(out), schema)


class TestUsage:
    def test_no_command(self, capsys):
        assert cli.main([]) == 2
        capsys.readouterr()

    def test_bad_rational(self, capsys):
        code, _, _ = run(capsys, "analyze", "symmetric:n=3", "--alpha", "x/y")
        assert code == 2
