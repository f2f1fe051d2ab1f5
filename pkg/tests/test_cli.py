import json
import subprocess
import sys

import pytest

from starquant.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gutt_star_first_order(capsys):
    code, out, _ = run(capsys, "gutt", "star", "--algebra", "heisenberg", "--p", "q", "--q", "p")
    assert code == 0
    assert json.loads(out)["string"] == "(-1/2*i*hbar)*c + q*p"


def test_gutt_poisson_and_limits(capsys):
    code, out, _ = run(capsys, "gutt", "poisson", "--algebra", "sl2", "--p", "e", "--q", "f")
    assert code == 0 and json.loads(out)["string"] == "h"
    code, out, _ = run(capsys, "gutt", "limits", "--algebra", "sl2", "--p", "e", "--q", "f")
    assert code == 0 and json.loads(out)


def test_associativity_suite_passes(capsys):
    code, out, _ = run(capsys, "check", "associativity", "--algebra", "sl2", "--max-degree", "6", "--trials", "50",
                       "--seed", "7")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_abelian_orders_differ_by_i_hbar(capsys):
    _, qp, _ = run(capsys, "std", "abelian", "--n", "1", "--f", "q", "--g", "p")
    _, pq, _ = run(capsys, "std", "abelian", "--n", "1", "--f", "p", "--g", "q")
    assert json.loads(qp)["string"] == "(1)*q*p"
    assert json.loads(pq)["string"] == "(i*hbar) + (1)*q*p"


def test_std_star_and_operator_check(capsys):
    P = '{"terms":[{"fn":"one","sym":"e*f"}]}'
    Q = '{"terms":[{"fn":{"left":"1,0","right":"0,1"},"sym":"h"}]}'
    code, out, _ = run(capsys, "std", "star", "--algebra", "sl2", "--P", P, "--Q", Q)
    assert code == 0 and json.loads(out)["terms"]
    code, out, _ = run(capsys, "std", "check-operator", "--algebra", "sl2", "--P", P, "--Q", Q,
                       "--psi", '{"left":"1,1","right":"0,1"}')
    assert code == 0 and json.loads(out)["deviation"] <= 1e-9


def test_numeric_commands(capsys):
    fn = ("--algebra", "sl2", "--left", "1,0", "--right", "1,0")
    code, out, _ = run(capsys, "taylor", *fn, "--direction", "0.1,0.2,0.3", "--order", "12")
    data = json.loads(out)
    assert code == 0 and float(data["series"][-1]["abs_error"]) < 1e-10
    code, out, _ = run(capsys, "majorant", *fn, "--order", "4")
    assert code == 0 and json.loads(out)["coefficients"][:2] == ["1.0", "1.0"]
    code, out, _ = run(capsys, "extend", *fn, "--chi", "0.1,0,0", "--xi", "0,0.1,0")
    data = json.loads(out)
    ext, taylor = (complex(*map(float, data[k])) for k in ("extension", "taylor"))
    assert abs(ext - taylor) < 1e-12


def test_csv_output(capsys):
    code, out, _ = run(capsys, "majorant", "--algebra", "sl2", "--left", "1,0", "--right", "1,0", "--order", "3",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("k,")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "check", "associativity", "--algebra", "nope")[0] == 2
    assert run(capsys, "gutt", "star", "--algebra", "sl2", "--p", "q", "--q", "e")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_check_failure_exits_1(capsys):
    code, out, _ = run(capsys, "check", "operator", "--algebra", "sl2", "--trials", "3", "--tol", "0")
    data = json.loads(out)
    assert code == 1 and data["passed"] is False
    assert data["reports"][0]["counterexample"]


def test_output_is_byte_identical_for_same_seed(tmp_path):
    cmd = [sys.executable, "-m", "starquant.cli", "check", "limits", "--algebra", "heisenberg", "--seed", "3",
           "--trials", "20"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


@pytest.mark.parametrize("suite", ["associativity", "limits", "pbw-roundtrip", "polarization", "seminorm", "cauchy",
                                   "extension", "operator"])
def test_every_suite_is_invocable(capsys, suite):
    code, out, _ = run(capsys, "check", suite, "--algebra", "heisenberg", "--trials", "3")
    assert code == 0, out
