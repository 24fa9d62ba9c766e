import json

import pytest

from hookcomm.cli import main
from hookcomm.linalg import ExactMatrix, jordan_type_of


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecide:
    def test_yes(self, capsys):
        code, out, _ = run(capsys, "decide", "--hook", "4,2", "--q", "3,2,1")
        assert code == 0
        assert "commutes" in out

    def test_no_prints_no_and_exits_one(self, capsys):
        code, out, _ = run(capsys, "decide", "--hook", "5,1", "--q", "3,3")
        assert code == 1
        assert out == "NO\n"

    def test_json_shape(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "decide", "--hook", "4,2", "--q", "3,2,1"
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["hook"] == [4, 2]
        assert obj["q"] == [3, 2, 1]
        assert obj["commutes"] is True
        assert obj["certificates"] == [
            {"case": "b", "k": 2, "mu": [3], "delta": "0"}
        ]

    def test_json_no(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "decide", "--hook", "5,1", "--q", "6"
        )
        assert code == 1
        assert json.loads(out)["commutes"] is False

    def test_byte_stable(self, capsys):
        _, first, _ = run(
            capsys, "--format", "json", "decide", "--hook", "4,2", "--q", "2,2,2"
        )
        _, second, _ = run(
            capsys, "--format", "json", "decide", "--hook", "4,2", "--q", "2,2,2"
        )
        assert first == second
        assert '", "' not in first  # compact separators

    def test_weight_mismatch_is_input_error(self, capsys):
        code, _, err = run(capsys, "decide", "--hook", "4,1", "--q", "3,3")
        assert code == 2
        assert err.startswith("error")

    def test_malformed_hook(self, capsys):
        for bad in ("4", "4,2,1", "x,y", "2,1"):
            code, _, err = run(capsys, "decide", "--hook", bad, "--q", "3,2,1")
            assert code == 2, bad
            assert err.startswith("error")


class TestEnumerate:
    def test_text_grouping(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--hook", "5,1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("7 commuting types for (5,1)")
        assert any(line.strip().startswith("a:") for line in lines)
        assert any(line.strip().startswith("c:") for line in lines)

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "enumerate", "--hook", "5,1")
        assert code == 0
        obj = json.loads(out)
        assert obj["hook"] == [5, 1]
        assert obj["count"] == 7
        assert obj["max"] == [5, 1]
        assert [3, 1, 1, 1] in obj["by_case"]["c"]
        types = [row["type"] for row in obj["types"]]
        assert [6] not in types and [3, 3] not in types and [4, 2] not in types

    def test_exclude_universal(self, capsys):
        _, full, _ = run(capsys, "--format", "json", "enumerate", "--hook", "5,1")
        _, trimmed, _ = run(
            capsys,
            "--format",
            "json",
            "enumerate",
            "--hook",
            "5,1",
            "--exclude-universal",
        )
        full, trimmed = json.loads(full), json.loads(trimmed)
        assert full["count"] == 7 and trimmed["count"] == 3
        assert [2, 2, 2] not in [row["type"] for row in trimmed["types"]]


class TestWitness:
    def test_matrix_written_and_round_trips(self, capsys, tmp_path):
        target = tmp_path / "w.json"
        code, out, _ = run(
            capsys, "witness", "--hook", "4,2", "--q", "3,2,1", "--out", str(target)
        )
        assert code == 0
        assert str(target) in out
        A = ExactMatrix.from_obj(json.loads(target.read_text()))
        assert jordan_type_of(A).jordan_type == (3, 2, 1)

    def test_inline_json(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "witness", "--hook", "3,3", "--q", "5,1"
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["certificate"]["case"] == "c"
        A = ExactMatrix.from_obj(obj["matrix"])
        assert jordan_type_of(A).jordan_type == (5, 1)

    def test_non_commuting_type_fails(self, capsys):
        code, _, err = run(capsys, "witness", "--hook", "5,1", "--q", "3,3")
        assert code == 1
        assert "does not commute" in err


class TestJordan:
    def test_zero_matrix(self, capsys, tmp_path):
        target = tmp_path / "m.json"
        target.write_text(json.dumps(ExactMatrix.zeros(6, 6).to_obj()))
        code, out, _ = run(
            capsys, "--format", "json", "jordan", "--matrix", str(target)
        )
        assert code == 0
        assert json.loads(out)["jordan_type"] == [1, 1, 1, 1, 1, 1]

    def test_not_nilpotent_is_input_error(self, capsys, tmp_path):
        target = tmp_path / "m.json"
        target.write_text(json.dumps(ExactMatrix.identity(3).to_obj()))
        code, _, err = run(capsys, "jordan", "--matrix", str(target))
        assert code == 2
        assert "NotNilpotent" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "jordan", "--matrix", "/nonexistent.json")
        assert code == 2
        assert err.startswith("error")


class TestTable:
    def test_text_mentions_all_hooks(self, capsys):
        code, out, _ = run(capsys, "table", "--N", "6")
        assert code == 0
        for label in ("(5,1)", "(4,1^2)", "(3,1^3)"):
            assert label in out

    def test_json_non_commuting_matches_classification(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "table", "--N", "6")
        assert code == 0
        rows = {tuple(r["hook"]): r for r in json.loads(out)["rows"]}
        assert rows[(5, 1)]["non_commuting"] == [[6], [4, 2], [4, 1, 1], [3, 3]]
        assert rows[(4, 2)]["non_commuting"] == [[6], [5, 1]]
        assert rows[(3, 3)]["non_commuting"] == [[6]]

    def test_too_small_is_input_error(self, capsys):
        code, _, _ = run(capsys, "table", "--N", "3")
        assert code == 2


class TestGeneric:
    def test_text(self, capsys):
        code, out, _ = run(
            capsys, "generic", "--p", "8,1,1", "--trials", "6", "--seed", "0"
        )
        assert code == 0
        assert "(8,2)" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys,
            "--format",
            "json",
            "generic",
            "--p",
            "5,1",
            "--trials",
            "4",
        )
        assert code == 0
        assert json.loads(out)["type"] == [5, 1]

    def test_bad_trials(self, capsys):
        code, _, _ = run(capsys, "generic", "--p", "3,1", "--trials", "0")
        assert code == 2


class TestOracle:
    def test_json_contract(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "oracle", "--hook", "3,1")
        assert code == 0
        obj = json.loads(out)
        assert set(obj) == {
            "hook",
            "grid",
            "attained",
            "missing_vs_theorem",
            "extra_vs_theorem",
        }
        assert obj["hook"] == [3, 1]
        assert obj["missing_vs_theorem"] == []
        assert obj["extra_vs_theorem"] == []

    def test_discrepancy_exits_three(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "oracle", "--hook", "3,1", "--values", "0,1"
        )
        assert code == 3
        assert json.loads(out)["missing_vs_theorem"] == [[2, 2]]

    def test_grid_cap_is_input_error(self, capsys):
        code, _, _ = run(
            capsys, "oracle", "--hook", "3,3", "--max-points", "100"
        )
        assert code == 2


class TestHarness:
    def test_env_cap_is_input_error(self, capsys, monkeypatch):
        monkeypatch.setenv("HOOKCOMM_MAX_N", "8")
        code, _, _ = run(capsys, "enumerate", "--hook", "9,2")
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

    def test_module_entry_point(self):
        import subprocess
        import sys

        proc = subprocess.run(
            [sys.executable, "-m", "hookcomm", "decide", "--hook", "5,1", "--q", "3,3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1
        assert proc.stdout == "NO\n"
