import json

import pytest

from hessinv.cli import main

CUBIC_ONES = "x^3+y^3+z^3+t^3+6*y*z*t+6*x*z*t+6*x*y*t+6*x*y*z"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _text_mode(monkeypatch):
    monkeypatch.delenv("HESSINV_OUTPUT", raising=False)


@pytest.mark.parametrize("form, ring, expected", [
    ("x^4+y^4+z^4", "x,y,z", "1728*x^2*y^2*z^2\n"),
    ("x^3+y^3+z^3+t^3", "x,y,z,t", "1296*x*y*z*t\n"),
])
def test_hess_golden(capsys, form, ring, expected):
    assert run(capsys, "hess", form, "--vars", ring)[:2] == (0, expected)


def test_hess_zero(capsys):
    code, out, _ = run(capsys, "hess", "x^4", "--vars", "x,y,z")
    assert code == 0
    assert out.splitlines()[0] == "0"
    assert "ZERO-HESSIAN" in out


def test_hess_from_file(capsys, tmp_path):
    f = tmp_path / "fermat.txt"
    f.write_text("x^4 + y^4 + z^4\n", encoding="utf-8")
    assert run(capsys, "hess", "--file", str(f))[:2] == (0, "1728*x^2*y^2*z^2\n")


@pytest.mark.parametrize("form", ["x^2+y", "x^4 + * y", "x^4 + w^4"])
def test_hess_bad_input_exits_2(capsys, form):
    code, out, err = run(capsys, "hess", form)
    assert code == 2 and out == "" and "error:" in err


def test_hess_syntax_error_has_position(capsys):
    _, _, err = run(capsys, "hess", "x^4 + * y")
    assert "position 6" in err


def test_invert_cubic_form(capsys):
    code, out, _ = run(capsys, "invert", "--case", "cubic-surface", "--form", CUBIC_ONES)
    assert code == 0
    assert out.splitlines()[0] == "(a,b,c,d) = (1,1,1,1), consistent"


def test_invert_fermat_quartic_exits_3(capsys):
    code, out, _ = run(capsys, "invert", "--case", "quartic-curve", "--form", "x^4+y^4+z^4")
    assert code == 3
    assert "GenericityFailure" in out


def test_invert_perturbed_table_exits_4(capsys, tmp_path):
    code, out, _ = run(capsys, "forward", "--case", "quartic-curve", "--params", "a1=1,a2=2,b1=3,b2=4,c1=5,c2=6")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 28
    perturbed = []
    for line in lines:
        alpha, value = line.split(":")
        if alpha.strip() == "2,2,2":
            line = f"{alpha}: {int(value) + 1}"
        perturbed.append(line)
    path = tmp_path / "table.txt"
    path.write_text("\n".join(perturbed) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "invert", "--case", "quartic-curve", "--table", str(path))
    assert code == 4
    assert "NotInImage" in out and "INCONSISTENT" in out


def test_invert_table_round_trip_and_sparse_file(capsys, tmp_path):
    path = tmp_path / "t.txt"
    # only nonzero entries of the Hessian of the cubic with a=b=c=d=1
    _, out, _ = run(capsys, "forward", "--case", "cubic-surface", "--params", "a=1,b=1,c=1,d=1")
    sparse = [ln for ln in out.splitlines() if not ln.endswith(": 0")]
    path.write_text("# cubic\n" + "\n".join(sparse) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "invert", "--case", "cubic-surface", "--table", str(path))
    assert code == 0 and out.startswith("(a,b,c,d) = (1,1,1,1), consistent")


@pytest.mark.parametrize("content", ["9,0,0 : 1", "6,0,0 = 1", "6,0,0 : one", "6,0,0 : 1\n6,0,0 : 2"])
def test_invert_bad_table_exits_2(capsys, tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content, encoding="utf-8")
    assert run(capsys, "invert", "--case", "quartic-curve", "--table", str(path))[0] == 2


def test_invert_json_schema(capsys):
    code, out, _ = run(capsys, "invert", "--json", "--case", "quartic-curve", "--params", "a1=1,a2=2,b1=3,b2=4,c1=5,c2=6")
    assert code == 0
    rec = json.loads(out)
    assert {"case", "params", "diagnostics", "consistent"} <= set(rec)
    assert rec["case"] == "quartic-curve" and rec["consistent"] is True
    assert rec["params"] == {"a1": "1", "a2": "2", "b1": "3", "b2": "4", "c1": "5", "c2": "6"}
    assert rec["diagnostics"]["delta_sys"] == "-2601984"


def test_json_mode_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HESSINV_OUTPUT", "json")
    code, out, _ = run(capsys, "hess", "x^4+y^4+z^4")
    assert code == 0 and json.loads(out)["hessian"] == "1728*x^2*y^2*z^2"


def test_roundtrip_commands(capsys):
    code, out, _ = run(capsys, "roundtrip", "--case", "cubic-surface", "--samples", "100", "--seed", "7")
    assert code == 0 and out.startswith("cubic-surface: 100/100 exact")
    code, out, _ = run(capsys, "roundtrip", "--case", "quartic-curve", "--samples", "100", "--seed", "7")
    assert code == 0 and out.startswith("quartic-curve: 100/100 exact")


def test_roundtrip_zero_samples_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["roundtrip", "--case", "cubic-surface", "--samples", "0"])
    assert err.value.code == 2


def test_verify_tables(capsys):
    code, out, _ = run(capsys, "verify-tables")
    assert code == 0
    assert out == "cubic-surface: 6/6 MATCH; quartic-curve: 20/20 MATCH\n"


def test_equivariance_command(capsys):
    code, out, _ = run(capsys, "equivariance", "--samples", "5", "--seed", "1")
    assert code == 0
    assert out.splitlines() == [
        "equivariance (d=4, nvars=3): 5/5 exact",
        "equivariance (d=3, nvars=4): 5/5 exact",
    ]


def test_delta_and_h_reports(capsys):
    code, out, _ = run(capsys, "delta-report")
    assert code == 0 and "verdict: UNEQUAL" in out and "delta probes: 20/20 agree" in out
    code, out, _ = run(capsys, "h-report")
    assert code == 0 and "witness (a1,a2,b1,b2,c1,c2) = (0,0,1,1,1,2) gives H = -4" in out


def test_outputs_are_deterministic(capsys):
    argv = ["roundtrip", "--case", "quartic-curve", "--samples", "20", "--seed", "3", "--json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert run(capsys, "delta-report") == run(capsys, "delta-report")


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all", "--samples", "3")
    assert code == 0 and out.rstrip().endswith("ALL IDENTITIES HOLD")
