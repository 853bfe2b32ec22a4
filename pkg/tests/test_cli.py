import argparse
import csv
from fractions import Fraction as F

import pytest

from finitekey import cli


def run(capsys, argv):
    rc = cli.main(argv)
    out = capsys.readouterr().out
    return rc, out.splitlines()


def cells(line, delim=","):
    # ERROR cells may contain commas and arrive quoted
    return next(csv.reader([line], delimiter=delim))


def test_compute_header_and_exact_row(capsys):
    rc, lines = run(capsys, [
        "compute", "--d", "2", "--n", "100", "--beta0", "1",
        "--epsilon", "0.25",
    ])
    assert rc == 0
    assert lines[0] == ",".join(cli.HEADER)
    row = cells(lines[1])
    assert len(row) == len(cli.HEADER)
    assert row[0] == "2" and row[1] == "100"
    assert row[2] == "1" and row[3] == "0"
    assert row[4] == "0.25" and row[5] == "0.0009765625"
    assert row[6] == "100" and row[7] == "0" and row[8] == "0"
    assert row[9] == "96" and row[10] == "0.96"
    assert row[13] == "1"


def test_error_rate_flag_matches_beta0(capsys):
    _, by_beta = run(capsys, ["compute", "--n", "10", "--beta0", "0.98",
                              "--epsilon", "0.5"])
    _, by_err = run(capsys, ["compute", "--n", "10", "--error-rate", "0.02",
                             "--epsilon", "0.5"])
    assert by_beta == by_err


def test_compute_domain_error_row(capsys):
    rc, lines = run(capsys, ["compute", "--n", "10", "--beta0", "0.4",
                             "--epsilon", "0.5"])
    assert rc == 1
    row = cells(lines[1])
    assert len(row) == len(cli.HEADER)
    assert row[6].startswith("ERROR:")


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "10", "--beta0", "0.9"],            # missing epsilon
    ["compute", "--n", "10", "--epsilon", "0.5"],          # missing beta group
    ["sweep", "--sweep-n", "1:3:1", "--n", "5",
     "--beta0", "0.9", "--epsilon", "0.5"],                # axis conflicts with fixed
    ["sweep", "--beta0", "0.9", "--epsilon", "0.5"],       # no axis at all
    ["threshold", "--d", "2", "--epsilon", "0.01"],        # neither n nor ntilde
    ["threshold", "--d", "2", "--n", "5", "--fixed-ntilde", "60",
     "--epsilon", "0.01"],                                 # both
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_asymptotic_anchor_row(capsys):
    rc, lines = run(capsys, ["asymptotic", "--d", "2", "--error-rate", "0.02"])
    assert rc == 0
    row = cells(lines[1])
    assert row[1] == "" and row[4] == "" and row[9] == ""
    assert row[10] == "0.758059267147"
    assert row[13] == row[10]


def test_sweep_linear_grid(capsys):
    rc, lines = run(capsys, ["sweep", "--sweep-n", "1:3:1", "--beta0", "0.9",
                             "--epsilon", "0.5"])
    assert rc == 0
    assert [cells(r)[1] for r in lines[1:]] == ["1", "2", "3"]


def test_sweep_log_grid(capsys):
    _, lines = run(capsys, ["sweep", "--sweep-n", "1:100:10:log",
                            "--beta0", "0.9", "--epsilon", "0.5"])
    assert [cells(r)[1] for r in lines[1:]] == ["1", "10", "100"]


def test_sweep_error_grid_continues_past_failures(capsys):
    rc, lines = run(capsys, ["sweep", "--sweep-error", "0.45:0.55:0.05",
                             "--n", "2", "--epsilon", "0.5"])
    assert rc == 1
    rows = [cells(r) for r in lines[1:]]
    assert len(rows) == 3
    assert rows[0][3] == "0.45" and not rows[0][6].startswith("ERROR:")
    assert rows[1][6].startswith("ERROR:") and rows[2][6].startswith("ERROR:")


def test_sweep_workers_deterministic(capsys):
    argv = ["sweep", "--sweep-epsilon", "0.1,0.5", "--n", "3",
            "--beta0", "0.9"]
    _, serial = run(capsys, argv + ["--workers", "1"])
    _, parallel = run(capsys, argv + ["--workers", "2"])
    assert serial == parallel


def test_sweep_dimension_with_fixed_ntilde(capsys):
    _, lines = run(capsys, ["sweep", "--sweep-d", "2,3", "--fixed-ntilde",
                            "600", "--beta0", "0.9", "--epsilon", "0.5"])
    rows = [cells(r) for r in lines[1:]]
    assert [r[0] for r in rows] == ["2", "3"]
    assert [r[1] for r in rows] == ["100", "50"]


def test_tsv_and_file_output(capsys, tmp_path):
    argv = ["compute", "--n", "4", "--beta0", "0.9", "--epsilon", "0.5"]
    _, csv_lines = run(capsys, argv)
    rc, tsv_lines = run(capsys, argv + ["--format", "tsv"])
    assert rc == 0
    assert cells(tsv_lines[0], "\t") == cli.HEADER
    assert cells(tsv_lines[1], "\t") == cells(csv_lines[1])

    out = tmp_path / "rows.csv"
    rc = cli.main(argv + ["--out", str(out)])
    capsys.readouterr()
    assert rc == 0
    assert out.read_text().splitlines() == csv_lines


def test_threshold_table(capsys):
    rc, lines = run(capsys, ["threshold", "--d", "2", "--n", "500",
                             "--epsilon", "0.01"])
    assert rc == 0
    assert lines[0] == ",".join(cli.THRESHOLD_HEADER)
    row = cells(lines[1])
    assert row[:3] == ["2", "500", "0.01"]
    assert row[3] == "0.0399"


def test_threshold_error_row(capsys):
    rc, lines = run(capsys, ["threshold", "--d", "2", "--n", "1",
                             "--epsilon", "0.01"])
    assert rc == 1
    assert cells(lines[1])[3].startswith("ERROR:")


def test_threshold_sweep_d(capsys):
    rc, lines = run(capsys, ["threshold", "--sweep-d", "2,3",
                             "--fixed-ntilde", "3000", "--epsilon", "0.1"])
    assert rc == 0
    rows = [cells(r) for r in lines[1:]]
    assert [r[0] for r in rows] == ["2", "3"]
    assert [r[1] for r in rows] == ["500", "250"]
    assert all(0 < float(r[3]) < 0.5 for r in rows)


# --- grid parsers ------------------------------------------------------------

def test_n_grid_parsers():
    assert cli._n_grid("10:30:10") == [10, 20, 30]
    assert cli._n_grid("1:100:10:log") == [1, 10, 100]
    assert cli._n_grid("1:4:1.5:log") == [1, 2, 3]  # rounded, deduped
    for bad in ("1:2", "1:2:3:4:5", "a:b:c", "1:10:2:linear"):
        with pytest.raises(argparse.ArgumentTypeError):
            cli._n_grid(bad)


def test_decimal_parsers():
    assert cli._decimal("0.25") == F(1, 4)
    with pytest.raises(argparse.ArgumentTypeError):
        cli._decimal("1/4")
    assert cli._decimal_grid("0.01:0.03:0.01") == [F(1, 100), F(1, 50), F(3, 100)]
    assert cli._decimal_list("0.1,0.5") == [F(1, 10), F(1, 2)]
    assert cli._int_list("2,3,4") == [2, 3, 4]
