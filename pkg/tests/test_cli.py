import csv
import io
import json
import math
import subprocess
import sys

import pytest

from tanint import compute
from tanint.cli import main
from tanint.symvalue import parse_json


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_latex(capsys):
    code, out, _ = run(capsys, "compute", "--n", "2", "--p", "1", "--format", "latex")
    assert code == 0
    assert out.strip() == r"-\frac{\pi^2}{32}+\frac{\pi}{4}-\frac{\ln 2}{2}"


def test_compute_text(capsys):
    assert run(capsys, "compute", "--n", "0", "--p", "0")[1] == "pi/4\n"


def test_compute_json_round_trips(capsys):
    code, out, _ = run(capsys, "compute", "--n", "9", "--p", "3", "--format", "json")
    assert code == 0 and parse_json(out) == compute(9, 3)


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "compute", "--n", "3", "--p", "1", "--format", "json")
    _, out2, _ = run(capsys, "--format", "json", "compute", "--n", "3", "--p", "1")
    assert out == out2


def test_compute_csv(capsys):
    _, out, _ = run(capsys, "compute", "--n", "4", "--p", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "p", "term", "coefficient"]
    assert ["4", "1", "ln2", "2/3"] in rows and ["4", "1", "1", "-1/6"] in rows


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "-1", "--p", "0"],
    ["compute", "--n", "x", "--p", "0"],
    ["compute", "--n", "1"],
    ["jn", "--n", "1", "--eps", "0"],
    ["--digits", "5", "eval", "--n", "1", "--p", "1"],
    ["frobnicate"],
])
def test_bad_arguments_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_table_formats(capsys):
    _, text, _ = run(capsys, "table", "--n-max", "2", "--p-max", "1")
    assert text.splitlines()[0] == "I(0,0) = pi/4" and len(text.splitlines()) == 6
    _, js, _ = run(capsys, "table", "--n-max", "2", "--p-max", "1", "--format", "json")
    data = json.loads(js)
    assert [(d["n"], d["p"]) for d in data] == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    _, tex, _ = run(capsys, "table", "--n-max", "2", "--p-max", "1", "--format", "latex")
    assert tex.startswith(r"\begin{align*}") and r"I^{(1)}_{2} &= -\frac{\pi^2}{32}" in tex


def test_eval(capsys):
    code, out, _ = run(capsys, "--digits", "20", "eval", "--n", "1", "--p", "1")
    assert code == 0 and out.startswith("0.1857")


def test_ln(capsys):
    assert run(capsys, "ln", "--n", "0")[1] == "1\n"
    assert run(capsys, "ln", "--n", "2")[1] == "pi^2/16 + pi*ln2/4 - catalan\n"


def test_jn(capsys):
    code, out, _ = run(capsys, "--format", "json", "jn", "--n", "0", "--eps", "1e-10", "--digits", "30")
    data = json.loads(out)
    assert code == 0
    j0 = -math.log(1 - math.pi / 4)
    assert float(data["lo"]) <= j0 <= float(data["hi"])


def test_jn_insufficient_digits(capsys):
    code, _, err = run(capsys, "jn", "--n", "10", "--eps", "1e-14", "--digits", "15")
    assert code == 2 and "digits" in err


def test_verify_grid(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "20", "--p-max", "3", "--digits", "50", "--tol", "1e-35")
    lines = out.splitlines()
    assert code == 0
    assert sum(" PASS " in l for l in lines) == 84
    assert lines[-1] == "84/84 passed"


def test_verify_failure_exit_1(capsys, monkeypatch):
    from tanint import oracle
    real = oracle.verify

    def broken(*a, **kw):
        reports = real(*a, **kw)
        r = reports[0]
        return [oracle.VerifyReport(r.id, r.exact_numeric, r.quadrature, r.abs_diff, r.tolerance, False)]

    monkeypatch.setattr(oracle, "verify", broken)
    code, out, _ = run(capsys, "verify", "--n-max", "0", "--p-max", "0", "--tol", "1e-20")
    assert code == 1 and "FAIL" in out


def test_oeis_offline_fixture(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("TANINT_CACHE", str(tmp_path))
    monkeypatch.setenv("TANINT_OEIS_URL", "http://127.0.0.1:9/search")
    code, out, _ = run(capsys, "oeis", "--terms", "1,1,2,3,5,8,13", "--offline")
    assert code == 0 and "A000045" in out


def test_oeis_network_failure_exit_3(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("TANINT_CACHE", str(tmp_path))
    monkeypatch.setenv("TANINT_OEIS_URL", "http://127.0.0.1:9/search")
    code, _, err = run(capsys, "oeis", "--atom", "ln2", "--p", "1", "--parity", "even", "--n-max", "14")
    assert code == 3 and "failed" in err


def test_oeis_bad_atom(capsys):
    assert run(capsys, "oeis", "--atom", "zeta3", "--offline")[0] == 2


def test_banner_only_without_quiet(capsys):
    main(["compute", "--n", "0", "--p", "0"])
    out = capsys.readouterr()
    assert out.out == "pi/4\n" and out.err.startswith("tanint ")


def test_module_entry_point_deterministic():
    cmd = [sys.executable, "-m", "tanint", "--quiet", "table", "--n-max", "6", "--p-max", "2", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
