"""Command-line behavior: flags, exit codes, formats, piping."""

import io
import subprocess
import sys

import pytest

from binmagic.cli import main
from binmagic.core import MagicSpec, validate
from binmagic.formats import parse_many
from binmagic.generator import generate


def run_cli(argv, stdin_text=None, monkeypatch=None, capsys=None):
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestGen:
    def test_square_dense(self, capsys, monkeypatch):
        code, out, err = run_cli(["gen", "-n", "5", "-k", "3", "--seed", "7",
                                  "--format", "dense"], capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert "seed: 7" in err
        lines = out.strip().splitlines()
        assert len(lines) == 5 and all(len(l) == 5 for l in lines)
        assert all(l.count("1") == 3 for l in lines)
        for j in range(5):
            assert sum(int(l[j]) for l in lines) == 3

    def test_deterministic_given_seed(self, capsys, monkeypatch):
        a = run_cli(["gen", "-n", "6", "-k", "2", "--seed", "11"], capsys=capsys,
                    monkeypatch=monkeypatch)
        b = run_cli(["gen", "-n", "6", "-k", "2", "--seed", "11"], capsys=capsys,
                    monkeypatch=monkeypatch)
        assert a == b

    def test_entropy_seed_echoed(self, capsys, monkeypatch):
        code, out, err = run_cli(["gen", "-n", "3", "-k", "1"], capsys=capsys,
                                 monkeypatch=monkeypatch)
        assert code == 0
        assert err.startswith("seed: ")
        int(err.split()[1])  # parses as an integer

    def test_zero_sum(self, capsys, monkeypatch):
        code, out, _ = run_cli(["gen", "-n", "2", "-k", "0", "--seed", "1"],
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "00\n00\n"

    def test_infeasible_exits_1_with_pairs(self, capsys, monkeypatch):
        code, out, err = run_cli(["gen", "-m", "3", "-n", "5", "--row-sum", "2",
                                  "--col-sum", "1"], capsys=capsys, monkeypatch=monkeypatch)
        assert code == 1
        assert "(0, 0)" in err and "(5, 3)" in err

    def test_bad_flags_exit_64(self, capsys, monkeypatch):
        for argv in (
            ["gen", "-n", "4", "-k", "2", "--row-sum", "2", "--col-sum", "2"],
            ["gen", "-n", "4"],
            ["gen", "-m", "3", "-n", "4", "-k", "2"],
            ["gen", "-n", "4", "-k", "9"],
            ["gen", "-n", "0", "-k", "0"],
            ["gen", "--format", "nope", "-n", "2", "-k", "1"],
            ["nonsense"],
        ):
            code, _, _ = run_cli(argv, capsys=capsys, monkeypatch=monkeypatch)
            assert code == 64, argv

    def test_count_batch_json(self, capsys, monkeypatch):
        code, out, _ = run_cli(["gen", "-n", "4", "-k", "2", "--seed", "3",
                                "--count", "4", "--format", "json"],
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        mats = parse_many(out, "json")
        assert len(mats) == 4
        for mat in mats:
            assert validate(mat, MagicSpec.square(4, 2)).is_valid

    def test_deterministic_flag_is_circulant(self, capsys, monkeypatch):
        code, out, err = run_cli(["gen", "-n", "4", "-k", "2", "--deterministic"],
                                 capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "1100\n0110\n0011\n1001\n"
        assert "seed" not in err

    def test_output_file(self, tmp_path, capsys, monkeypatch):
        target = tmp_path / "out.dense"
        code, out, _ = run_cli(["gen", "-n", "3", "-k", "1", "--seed", "2",
                                "-o", str(target)], capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0 and out == ""
        mats = parse_many(target.read_text(), "dense")
        assert validate(mats[0], MagicSpec.square(3, 1)).is_valid


class TestCheck:
    def test_valid_auto_infer(self, capsys, monkeypatch):
        code, out, _ = run_cli(["check"], stdin_text="10\n01\n",
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "VALID a=1 b=1\n"

    def test_invalid_columns(self, capsys, monkeypatch):
        code, out, _ = run_cli(["check"], stdin_text="10\n10\n",
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 2
        assert out.startswith("INVALID col")

    def test_expected_sums_flags(self, capsys, monkeypatch):
        code, out, _ = run_cli(["check", "--row-sum", "1", "--col-sum", "1"],
                               stdin_text="10\n01\n", capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        code, out, _ = run_cli(["check", "--row-sum", "2", "--col-sum", "2"],
                               stdin_text="10\n01\n", capsys=capsys, monkeypatch=monkeypatch)
        assert code == 2

    def test_one_sided_expectation_is_usage_error(self, capsys, monkeypatch):
        code, _, _ = run_cli(["check", "--row-sum", "1"], stdin_text="1\n",
                             capsys=capsys, monkeypatch=monkeypatch)
        assert code == 64

    def test_unparseable_exits_65(self, capsys, monkeypatch):
        code, _, err = run_cli(["check"], stdin_text="banana\n",
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 65

    def test_gen_piped_to_check(self, capsys, monkeypatch):
        code, gen_out, _ = run_cli(["gen", "-m", "6", "-n", "4", "--row-sum", "2",
                                    "--col-sum", "3", "--seed", "8", "--count", "3"],
                                   capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        code, out, _ = run_cli(["check"], stdin_text=gen_out,
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "VALID a=2 b=3\n" * 3

    def test_file_input(self, tmp_path, capsys, monkeypatch):
        path = tmp_path / "m.dense"
        path.write_text("11\n11\n")
        code, out, _ = run_cli(["check", str(path)], capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "VALID a=2 b=2\n"


class TestFeasibleAndCount:
    def test_feasible_pairs_output(self, capsys, monkeypatch):
        code, out, _ = run_cli(["feasible", "-m", "4", "-n", "6"],
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "0 0\n3 2\n6 4\n"

    def test_feasible_square_default(self, capsys, monkeypatch):
        code, out, _ = run_cli(["feasible", "-n", "2"], capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert out == "0 0\n1 1\n2 2\n"

    def test_count_values(self, capsys, monkeypatch):
        for argv, want in [
            (["count", "-n", "3", "-k", "1"], "6"),
            (["count", "-n", "4", "-k", "2"], "90"),
            (["count", "-m", "3", "-n", "5", "--row-sum", "2", "--col-sum", "1"], "0"),
        ]:
            code, out, _ = run_cli(argv, capsys=capsys, monkeypatch=monkeypatch)
            assert code == 0
            assert out.strip() == want

    def test_count_guard_exits_1(self, capsys, monkeypatch):
        code, _, err = run_cli(["count", "-n", "9", "-k", "2"],
                               capsys=capsys, monkeypatch=monkeypatch)
        assert code == 1
        assert "guard" in err


class TestBenchCommand:
    def test_csv_report_and_exponent(self, tmp_path, capsys, monkeypatch):
        report = tmp_path / "r.csv"
        code, out, err = run_cli(["bench", "--sizes", "8,16,32", "--reps", "2",
                                  "--report", str(report)],
                                 capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        lines = report.read_text().strip().splitlines()
        assert lines[0] == "n,k,median_seconds,matrices_per_second"
        assert len(lines) == 4
        assert "scaling exponent:" in err

    def test_single_size_no_exponent(self, capsys, monkeypatch):
        code, out, err = run_cli(["bench", "--sizes", "8", "--reps", "2"],
                                 capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        assert "n/a" in err

    def test_json_report(self, tmp_path, capsys, monkeypatch):
        import json
        path = tmp_path / "r.json"
        code, _, _ = run_cli(["bench", "--sizes", "8,16", "--reps", "2",
                              "--json", str(path), "--report", str(tmp_path / "r.csv")],
                             capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
        data = json.loads(path.read_text())
        assert {e["n"] for e in data["entries"]} == {8, 16}
        assert "exponent" in data


def test_console_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "binmagic", "gen", "-n", "5", "-k", "3", "--seed", "7"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stderr.strip() == "seed: 7"
    mats = parse_many(proc.stdout, "dense")
    assert mats[0] == generate(MagicSpec.square(5, 3), 7)
