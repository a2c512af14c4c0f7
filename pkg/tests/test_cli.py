import csv
import io
import json
import subprocess
import sys

import pytest

from nlstar import cli
from nlstar import star as sm
from nlstar.spectrum import SpectrumParams

PT = ["--preset", "poschl-teller", "--k", "2", "--kp", "2"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_csv_columns_and_exit(capsys):
    code, out, _ = run(capsys, "validate", *PT, "--family", "gk", "--moduli", "0.5", "--angles", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == cli.VALIDATE_COLUMNS
    assert {r[5] for r in rows[1:]} <= {"PASS", "CORRECTED"}
    assert any(r[0] == "gk_z_star_zbar" and r[5] == "CORRECTED" for r in rows[1:])


def test_validate_is_byte_identical(capsys):
    argv = ["validate", *PT, "--family", "both", "--moduli", "0.2,0.5", "--angles", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first


def test_validate_json_schema(capsys):
    code, out, _ = run(capsys, "validate", "--a", "1", "--b", "4", "--family", "pk", "--z", "0.3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1
    assert doc["columns"] == cli.VALIDATE_COLUMNS
    assert doc["dim"]["pk"] >= 64
    assert all(set(r) == set(cli.VALIDATE_COLUMNS) for r in doc["rows"])


def test_validate_exit_one_on_fail(capsys):
    # at a tiny Fock space the truncation error exceeds the tolerance
    code, out, _ = run(capsys, "validate", *PT, "--family", "pk", "--dim", "8", "--z", "0.8")
    assert code == 1
    assert "FAIL" in out


def test_harmonic_validate_passes(capsys):
    code, _, _ = run(capsys, "validate", "--preset", "harmonic", "--moduli", "0.5", "--angles", "2")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "--preset", "poschl-teller", "--k", "1", "--kp", "2"],
        ["validate", "--a", "1"],
        ["validate", "--preset", "harmonic", "--a", "1", "--b", "1"],
        ["validate", "--a", "-1", "--b", "1"],
        ["validate", "--a", "1", "--b", "4", "--dim", "4"],
        ["validate", "--a", "1", "--b", "4", "--tol", "0"],
        ["star-eval", "--a", "1", "--b", "4", "--A", "RX", "--B", "L"],
        ["table", "--a", "1", "--b", "4", "--symbol", "D", "--l", "-1"],
        ["convergence", "--a", "1", "--b", "4", "--dims", "4,16"],
        ["validate", "--preset", "anharmonic"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_table_g_at_origin(capsys):
    code, out, _ = run(capsys, "table", *PT, "--symbol", "G", "--z", "0")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["re(point)", "im(point)", "value", "closed_form", "printed_form"]
    assert float(rows[1][2]) == pytest.approx(5.0)
    assert float(rows[1][3]) == pytest.approx(5.0)


def test_table_d_symbol(capsys):
    code, out, _ = run(capsys, "table", *PT, "--symbol", "D", "--l", "1", "--z", "0.5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert float(rows[1][2]) == pytest.approx(float(rows[1][3]), rel=1e-10)


def test_star_eval(capsys):
    code, out, _ = run(capsys, "star-eval", "--a", "1", "--b", "4", "--A", "L", "--B", "R", "--family", "gk", "--z", "0.5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[1][0] == "gk"
    # <z|[a-, a+]|z> = <z|G|z>
    assert float(rows[1][5]) == pytest.approx(sm.g_symbol_closed_form(SpectrumParams(1, 4), 0.5), rel=1e-12)


def test_resolution_output(capsys):
    code, out, _ = run(capsys, "resolution", "--preset", "square-well", "--n-max", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["rows"]) == 8
    assert max(r["residual"] for r in doc["rows"]) < 1e-10


def test_convergence_output(capsys, tmp_path):
    target = tmp_path / "conv.csv"
    code, out, _ = run(capsys, "convergence", *PT, "--family", "pk", "--dims", "16,32", "--z", "0.5", "-o", str(target))
    assert code == 0 and out == ""
    rows = list(csv.reader(target.open()))
    assert rows[0] == ["family", "identity_name", "dim", "corrected_residual", "paper_residual"]
    assert {r[2] for r in rows[1:]} == {"16", "32"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nlstar", "table", "--preset", "harmonic", "--symbol", "G", "--z", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("re(point)")
