"""Command-line interface: formats, determinism, exit codes."""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from tailcut.cli import _COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_coeffs_text(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "e1", "--z", "5", "--m", "4", "--format", "text")
    assert code == 0
    assert "gamma[0] = 1" in out
    assert "gamma[4] = 45" in out


def test_coeffs_json_with_factorial(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "e1", "--z", "5", "--m", "3",
                       "--format", "json", "--factorial")
    assert code == 0
    payload = json.loads(out)
    assert payload["gamma"] == ["1", "-5", "20", "-55"]
    assert payload["gamma_factorial"] == ["1", "-5", "20", "-35"]


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "zeta", "--s", "2", "--m", "2", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert rows[0] == ["mu", "gamma"]
    assert rows[1] == ["0", "-1"]
    assert rows[3] == ["2", "-1/6"]


def test_approx_csv_columns(capsys):
    code, out, _ = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "4",
                       "--n", "8", "--method", "power", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert rows[0] == _COLUMNS
    assert len(rows) == 2
    row = dict(zip(rows[0], rows[1]))
    assert row["family"] == "e1"
    assert row["params"] == "z=5"
    assert (row["n"], row["m"], row["method"]) == ("8", "4", "power")
    assert row["seconds"] == "0"


def test_approx_method_all_labels(capsys):
    code, out, _ = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "4",
                       "--n", "8", "--method", "all", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert [r[4] for r in rows[1:]] == ["power", "factorial", "pade[2/2]"]


def test_negative_argument_values(capsys):
    code, out, _ = run(capsys, "approx", "--family", "2f1", "--a", "1/3", "--b", "7/5",
                       "--c", "9/2", "--z", "-17/20", "--m", "4", "--n", "5", "--method", "power", "--format", "csv")
    assert code == 0
    row = parse_csv(out)[1]
    assert row[1] == "a=1/3;b=7/5;c=9/2;z=-17/20"


def test_pade_zero_zero_equals_power_order_zero(capsys):
    _, out_a, _ = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "0",
                      "--n", "6", "--method", "power", "--format", "csv")
    _, out_b, _ = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "0",
                      "--n", "6", "--method", "pade", "--L", "0", "--M", "0", "--format", "csv")
    rows_a, rows_b = parse_csv(out_a), parse_csv(out_b)
    assert rows_b[1][4] == "pade[0/0]"
    assert rows_a[1][:4] == rows_b[1][:4]
    assert rows_a[1][5:] == rows_b[1][5:]


def test_table_requires_range(capsys):
    code, _, err = run(capsys, "table", "--family", "e1", "--z", "5", "--m", "4", "--n", "4")
    assert code == 2
    assert "n-range" in err


def test_table_deterministic_output(tmp_path, capsys):
    args = ("table", "--family", "e1", "--z", "5", "--m", "4", "--n-range", "3..5",
            "--method", "all")
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(list(args) + ["--out", str(first)]) == 0
    assert main(list(args) + ["--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    rows = parse_csv(first.read_text())
    assert len(rows) == 1 + 3 * 3
    assert all(r[-1] == "0" for r in rows[1:])


def test_timing_opt_in(capsys):
    code, out, _ = run(capsys, "table", "--family", "e1", "--z", "5", "--m", "2",
                       "--n-range", "4..4", "--method", "power", "--timing")
    assert code == 0
    seconds = parse_csv(out)[1][-1]
    assert seconds != "0" and float(seconds) >= 0


def test_json_rows_are_decimal_strings(capsys):
    code, out, _ = run(capsys, "approx", "--family", "zeta", "--s", "2", "--m", "4",
                       "--n", "6", "--method", "power", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert isinstance(rows, list) and rows[0]["method"] == "power"
    assert isinstance(rows[0]["approx"], str)
    assert isinstance(rows[0]["n"], int)
    float(rows[0]["approx"])  # parses as a number


def test_exit_code_degenerate(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "zeta", "--s", "1", "--m", "2")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "coeffs", "--family", "e1", "--z", "0", "--m", "2")
    assert code == 2
    code, _, err = run(capsys, "approx", "--family", "2f1", "--a", "1/3", "--b", "1/2",
                       "--c", "2", "--z", "1", "--m", "2", "--n", "3")
    assert code == 2


def test_exit_code_oracle_failure(capsys):
    # |z| >= 1 means the tail has no geometric bound: oracle refuses
    code, _, err = run(capsys, "approx", "--family", "2f1", "--a", "1/3", "--b", "1/2",
                       "--c", "2", "--z", "3/2", "--m", "2", "--n", "3")
    assert code == 3
    assert "oracle error:" in err


def test_mixed_literals_rejected(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "2f1", "--a", "1/3", "--b", "0.4",
                       "--c", "2", "--z", "1/2", "--m", "2")
    assert code == 2 and "mixed" in err
    code, _, _ = run(capsys, "coeffs", "--family", "2f1", "--a", "1/3", "--b", "0.4",
                     "--c", "2", "--z", "1/2", "--m", "2", "--exact")
    assert code == 0


def test_stray_flag_rejected(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "zeta", "--s", "2", "--z", "5", "--m", "2")
    assert code == 2
    assert "--z" in err


def test_missing_parameter_rejected(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "zeta", "--m", "2")
    assert code == 2
    assert "--s" in err


def test_n_and_range_conflict(capsys):
    code, _, err = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "2",
                       "--n", "3", "--n-range", "3..5")
    assert code == 2


def test_pade_degree_flags(capsys):
    code, _, err = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "4",
                       "--n", "6", "--method", "power", "--L", "2")
    assert code == 2  # L/M only make sense for pade
    code, _, err = run(capsys, "approx", "--family", "e1", "--z", "5", "--m", "4",
                       "--n", "6", "--method", "pade", "--L", "3", "--M", "3")
    assert code == 2  # L+M exceeds m


def test_precision_floor(capsys):
    code, _, err = run(capsys, "coeffs", "--family", "e1", "--z", "0.5", "--m", "2",
                       "--precision", "10")
    assert code == 2


def test_check_bernoulli(capsys):
    code, out, _ = run(capsys, "check", "bernoulli", "--max", "12")
    assert code == 0
    assert out.startswith("bernoulli: pass")


def test_check_pade22(capsys):
    code, out, _ = run(capsys, "check", "pade22", "--family", "e1")
    assert code == 0
    assert "pade22: pass" in out


def test_check_order_single_family(capsys):
    code, out, _ = run(capsys, "check", "order", "--family", "e1", "--z", "3", "--m", "2")
    assert code == 0
    assert "order: pass" in out


def test_check_output_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code = main(["check", "bernoulli", "--max", "8", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert target.read_text().startswith("bernoulli: pass")


def test_console_script_entry_point():
    proc = subprocess.run(["tailcut", "coeffs", "--family", "e1", "--z", "5",
                           "--m", "2", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "mu,gamma"
