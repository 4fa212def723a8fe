from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from spider_theta import cli
from spider_theta import netforms as nf
from spider_theta.qscalar import QScalar, limit_q1
from spider_theta.webcalc import free_loops
from spider_theta.webcalc.reduce import LOOP_SINGLE


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == cli.EXIT_OK
    return json.loads(out)


class TestTheta:
    def test_q1_value(self, capsys):
        r = run_json(capsys, "theta", "1", "1", "2", "--q1")
        assert r["theta_q1"] == "-10" and r["reason"] is None and r["diagram_sign"] == -1

    def test_parity_zero(self, capsys):
        r = run_json(capsys, "theta", "1", "1", "1")
        assert r["reason"] == "parity" and not r["admissible_generic"]
        assert QScalar.from_json(r["theta_exact"]).is_zero()

    def test_trace_case(self, capsys):
        r = run_json(capsys, "theta", "3", "3", "0", "--q1")
        assert abs(int(r["theta_q1"])) == 20

    def test_exact_round_trip(self, capsys):
        r = run_json(capsys, "theta", "2", "2", "2")
        assert QScalar.from_json(r["theta_exact"]) == nf.theta((2, 2, 2))

    def test_at_root_with_level(self, capsys):
        r = run_json(capsys, "theta", "1", "1", "2", "--k", "1")
        assert r["k"] == 1 and r["theta_at_root"]["N"] == 16
        assert r["admissible_level"] and not r["theta_at_root"]["nonzero_certified"]

    def test_at_root(self, capsys):
        r = run_json(capsys, "theta", "1", "1", "2", "--at-root", "24")
        root = r["theta_at_root"]
        assert root["nonzero_certified"]
        assert (root["re"] ** 2 + root["im"] ** 2) ** 0.5 > 2 * root["error_bound"]

    def test_text_and_csv(self, capsys):
        code, out, _ = run(capsys, "theta", "1", "1", "0")
        assert code == 0 and "theta_exact:" in out
        code, out, _ = run(capsys, "theta", "1", "1", "0", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and QScalar.from_json(json.loads(rows[0]["theta_exact"])) == nf.theta((1, 1, 0))

    @pytest.mark.parametrize("argv", [
        ("theta", "1", "1", "-2"),
        ("theta", "1", "1", "2", "--k", "1", "--at-root", "20"),
        ("theta", "1", "1", "2", "--at-root", "15"),
        ("theta", "1", "1"),
        ("theta", "1", "1", "2", "--q1", "--at-root", "16"),
    ])
    def test_usage_errors(self, capsys, argv):
        try:
            code = cli.main(list(argv))
        except SystemExit as exc:
            code = exc.code
        capsys.readouterr()
        assert code == cli.EXIT_USAGE


class TestTable:
    def table(self, capsys, *argv):
        return run_json(capsys, "table", *argv)

    def test_row_order_and_fields(self, capsys):
        data = self.table(capsys, "--max-sum", "4", "--level", "3")
        triples = [(r["a"], r["b"], r["c"]) for r in data["rows"]]
        assert triples == sorted(triples) and all(a <= b <= c and a + b + c <= 4 for a, b, c in triples)
        assert data["N"] == 24 and all(r["N"] == 4 * r["k"] + 12 for r in data["rows"])
        row = next(r for r in data["rows"] if (r["a"], r["b"], r["c"]) == (1, 1, 2))
        assert row["admissible_level"] and row["admissible_generic"]

    def test_level_inadmissible_row(self, capsys):
        data = self.table(capsys, "--max-sum", "12", "--level", "3")
        row = next(r for r in data["rows"] if (r["a"], r["b"], r["c"]) == (4, 4, 4))
        assert row["admissible_generic"] and not row["admissible_level"]

    def test_negligible_clasp_at_level_zero(self, capsys):
        # the defining strand is negligible at level 0: its trace contains [6] = 0 at N = 12
        data = self.table(capsys, "--max-sum", "2", "--level", "0")
        row = next(r for r in data["rows"] if (r["a"], r["b"], r["c"]) == (0, 1, 1))
        assert row["negligible_any_clasp"] and not row["nonzero_certified"]
        assert abs(row["theta_at_root"]["re"]) <= row["theta_at_root"]["error_bound"]

    def test_certified_rows_clear_the_bound(self, capsys):
        data = self.table(capsys, "--max-sum", "8", "--level", "2")
        for r in data["rows"]:
            if r["nonzero_certified"]:
                root = r["theta_at_root"]
                assert (root["re"] ** 2 + root["im"] ** 2) ** 0.5 > 2 * root["error_bound"]

    def test_exact_values_round_trip(self, capsys):
        data = self.table(capsys, "--max-sum", "6", "--level", "1")
        for r in data["rows"]:
            t = (r["a"], r["b"], r["c"])
            assert QScalar.from_json(r["theta_exact"]) == nf.theta(t)
            if r["theta_q1"] is not None:
                assert limit_q1(nf.theta(t)) == Fraction(r["theta_q1"])

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_bit_reproducible(self, tmp_path, capsys, fmt):
        paths = [tmp_path / f"t{i}.{fmt}" for i in range(2)]
        for p in paths:
            assert cli.main(["table", "--max-sum", "8", "--level", "2", "--format", fmt, "--out", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_is_lossless(self, tmp_path):
        out = tmp_path / "t.csv"
        cli.main(["table", "--max-sum", "4", "--N", "20", "--format", "csv", "--out", str(out)])
        rows = list(csv.DictReader(out.open()))
        assert list(rows[0]) == cli.CSV_FIELDS
        for r in rows:
            t = (int(r["a"]), int(r["b"]), int(r["c"]))
            assert QScalar.from_json(json.loads(r["theta_exact"])) == nf.theta(t)

    def test_matches_published_schema(self, capsys):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads((Path(__file__).parents[1] / "docs" / "table_row.schema.json").read_text())
        jsonschema.validate(self.table(capsys, "--max-sum", "8", "--level", "2"), schema)

    def test_level_from_order(self, capsys):
        data = self.table(capsys, "--max-sum", "2", "--N", "20")
        assert data["k"] == 2

    def test_io_failure(self, tmp_path, capsys):
        code, _, err = run(capsys, "table", "--max-sum", "2", "--level", "1", "--out", str(tmp_path / "no" / "x.json"))
        assert code == cli.EXIT_FAIL and "cannot write" in err

    @pytest.mark.parametrize("argv", [
        ("table", "--max-sum", "-1", "--level", "1"),
        ("table", "--max-sum", "4"),
        ("table", "--max-sum", "4", "--level", "1", "--N", "20"),
        ("table", "--max-sum", "4", "--N", "18"),
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == cli.EXIT_USAGE and err.startswith("error:")

    def test_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.PRECISION_ENV, "256")
        data = self.table(capsys, "--max-sum", "2", "--level", "1")
        assert data["precision_bits"] == 256
        monkeypatch.setenv(cli.PRECISION_ENV, "64")
        code, _, _ = run(capsys, "table", "--max-sum", "2", "--level", "1")
        assert code == cli.EXIT_USAGE
        monkeypatch.setenv(cli.PRECISION_ENV, "lots")
        code, _, _ = run(capsys, "table", "--max-sum", "2", "--level", "1")
        assert code == cli.EXIT_USAGE


class TestOracle:
    def test_single_strand_theta(self, capsys):
        r = run_json(capsys, "oracle", "--a", "1", "--b", "1", "--c", "0")
        assert QScalar.from_json(r["value"]) == LOOP_SINGLE
        assert r["steps"] >= 0 and r["term_high_water"] >= 1

    def test_web_file(self, tmp_path, capsys):
        f = tmp_path / "single_loop.json"
        f.write_text(free_loops(1, 0).dumps())
        r = run_json(capsys, "oracle", "--web-file", str(f))
        assert QScalar.from_json(r["value"]) == LOOP_SINGLE and r["value_q1"] == "-4"

    def test_matches_closed_form(self, capsys):
        r = run_json(capsys, "oracle", "--a", "2", "--b", "2", "--c", "2")
        assert r["matches_closed_form"] is True
        assert QScalar.from_json(r["value"]) == nf.diagram_sign((2, 2, 2)) * nf.theta((2, 2, 2))

    def test_budget_exit_code(self, capsys):
        code, _, err = run(capsys, "oracle", "--a", "3", "--b", "3", "--c", "2", "--term-budget", "5")
        assert code == cli.EXIT_BUDGET and "budget" in err

    def test_bad_inputs(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"vertices": [{"id": 0, "kind": "X"}], "edges": []}')
        assert run(capsys, "oracle", "--web-file", str(bad))[0] == cli.EXIT_USAGE
        assert run(capsys, "oracle", "--a", "1", "--b", "1", "--c", "1")[0] == cli.EXIT_USAGE
        assert run(capsys, "oracle", "--a", "1")[0] == cli.EXIT_USAGE
        assert run(capsys, "oracle", "--web-file", str(tmp_path / "missing.json"))[0] == cli.EXIT_FAIL


class TestVerify:
    def test_recursion_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "recursion", "--max-sum", "10")
        assert code == cli.EXIT_OK
        lines = out.splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1].startswith("recursion:") and "max-sum 10" in lines[-1]

    def test_trace_suite(self, capsys):
        assert run(capsys, "verify", "--suite", "trace", "--max-sum", "8")[0] == cli.EXIT_OK

    def test_oracle_suite_small(self, capsys):
        # the first disagreement with the closed form appears at (2, 0, 2), sum 4
        assert run(capsys, "verify", "--suite", "oracle", "--max-sum", "2")[0] == cli.EXIT_OK
        code, out, _ = run(capsys, "verify", "--suite", "oracle", "--max-sum", "4")
        assert code == cli.EXIT_FAIL and "FAIL oracle (2, 0, 2)" in out

    def test_failure_exit_code(self, capsys):
        # degenerate triples vanish at their smallest admissible order
        code, out, _ = run(capsys, "verify", "--suite", "theorem9", "--max-sum", "4")
        assert code == cli.EXIT_FAIL and "FAIL theorem9 (0, 1, 1) N=12" in out

    def test_negative_scale(self, capsys):
        assert run(capsys, "verify", "--suite", "trace", "--max-sum", "-1")[0] == cli.EXIT_USAGE
