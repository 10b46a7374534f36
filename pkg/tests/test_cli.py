import json
import os
import subprocess
import sys

import pytest

from lacunary_ldp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_row(capsys):
    code, out, _ = run(capsys, "count", "--q", "2", "--m", "4", "--n", "3")
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("q,m,n,A_m,B_m")
    assert row.startswith("2,4,3,114,")


@pytest.mark.parametrize("engine", ["dp", "laurent", "brute", "recurrence"])
def test_count_engines(capsys, engine):
    _, out, _ = run(capsys, "count", "--q", "3", "--m", "4", "--n", "3", "--engine", engine)
    assert out.splitlines()[1].split(",")[3] == "106"


def test_rate_taylor(capsys):
    _, out, _ = run(capsys, "rate-taylor", "--q", "3", "--order", "10")
    assert json.loads(out)[:7] == ["1", "0", "-1/12", "0", "1/6", "0", "-39/320"]
    _, out, _ = run(capsys, "rate-taylor", "--q", "tilde", "--order", "6")
    assert json.loads(out) == ["1", "0", "1/4", "0", "5/36"]


def test_structured_outputs(capsys):
    _, out, _ = run(capsys, "ampoly", "--q", "2", "--m", "6")
    assert json.loads(out)["coefficients"] == ["870", "-3310", "900", "120"]
    _, out, _ = run(capsys, "cumulants", "--q", "2", "--max-order", "5")
    assert out.splitlines()[5].split(",")[4:] == ["-1/384", "-1/16"]
    _, out, _ = run(capsys, "lambda-taylor", "--q", "2", "--order", "4")
    assert json.loads(out) == ["0", "0", "1/4", "1/8", "3/64"]
    _, out, _ = run(capsys, "moments", "--q", "2", "--m", "3", "--n", "5")
    assert out.splitlines()[3] == "3,3,0"
    _, out, _ = run(capsys, "seq", "--seq", "interleaved:2x2,3x2", "--hadamard", "2")
    data = json.loads(out)
    assert data["terms"] == ["2", "4", "9", "27"] and data["hadamard"]["holds"]


def test_numeric_subcommands(capsys):
    _, out, _ = run(capsys, "lambda", "--q", "2", "--theta-grid=-0.5:0.5:0.5", "--grid-log2", "12")
    rows = [r.split(",") for r in out.splitlines()]
    assert rows[0] == ["theta", "lambda_q", "lambda_tilde", "gap"] and len(rows) == 4
    assert float(rows[2][1]) == 0.0
    _, out, _ = run(capsys, "rate", "--q", "2", "--x", "1.5")
    assert out.splitlines()[1].split(",")[2] == "inf"
    _, out, _ = run(capsys, "rate", "--q", "tilde", "--x", "0.5")
    assert abs(float(out.splitlines()[1].split(",")[2]) - 0.26828) < 5e-4


def test_simulate_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--seq", "geometric:2:2", "--mode", "polyexact",
                       "--theta", "1", "--d", "2")
    assert code == 0 and out.splitlines()[1].split(",")[3] == "27/16"
    _, out, _ = run(capsys, "simulate", "--mode", "sublacunary", "--n", "3", "--grid-log2", "16")
    assert len(out.splitlines()) == 4
    path = tmp_path / "seq.json"
    path.write_text(json.dumps({"kind": "custom", "params": {}, "terms": ["1", "3"]}))
    _, out, _ = run(capsys, "simulate", "--seq", str(path), "--mode", "levelset", "--x", "0.5",
                    "--grid-log2", "16")
    assert out.splitlines()[0].startswith("n,x,probability")
    _, out, _ = run(capsys, "simulate", "--seq", "geometric:2:5", "--mode", "increments",
                    "--theta", "1", "--grid-log2", "16")
    assert len(out.splitlines()) == 5


def test_figure1(capsys, tmp_path):
    svg, table = tmp_path / "f.svg", tmp_path / "f.csv"
    code, _, _ = run(capsys, "figure1", "--out", str(svg), "--csv", str(table), "--points", "3",
                     "--xmax", "0.2")
    assert code == 0
    assert table.read_text().splitlines()[0] == "x,I_tilde,I_2,I_3,I_4"
    assert svg.read_text().startswith("<svg")


@pytest.mark.parametrize("argv,code", [
    (["count", "--q", "1", "--m", "2", "--n", "2"], 2),
    (["count", "--q", "2", "--m", "2"], 2),
    (["count", "--q", "2", "--m", "2", "--n", "2", "--bogus"], 2),
    (["nope"], 2),
    (["simulate", "--seq", "geometric:2", "--theta", "1"], 2),
    (["simulate", "--seq", "large_gap:30", "--mode", "polyexact", "--theta", "1", "--d", "10"], 3),
    (["count", "--q", "2", "--m", "12", "--n", "12", "--engine", "brute", "--workbound", "100"], 3),
    (["simulate", "--seq", "geometric:3:14", "--theta", "2", "--grid-log2", "16"], 1),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert len(err.strip().splitlines()) >= 1 and err.startswith("error: ")
    assert len([l for l in err.splitlines() if l.startswith("error: ")]) == 1


def test_internal_consistency_exit(capsys, monkeypatch):
    from lacunary_ldp import diophantine
    from lacunary_ldp.errors import InternalConsistencyError

    def broken(*a):
        raise InternalConsistencyError("forced")
    monkeypatch.setattr(diophantine, "am_polynomial", broken)
    code, _, err = run(capsys, "ampoly", "--q", "2", "--m", "3")
    assert code == 4 and err.startswith("error: internal-consistency: forced")


def test_deterministic_output(tmp_path):
    cmd = [sys.executable, "-m", "lacunary_ldp", "simulate", "--seq", "geometric:2:6", "--theta", "0.5",
           "--mode", "increments", "--grid-log2", "16"]
    a = subprocess.run(cmd + ["--threads", "1"], capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd + ["--threads", "3"], capture_output=True, text=True, check=True).stdout
    assert a == b


def test_workbound_env(capsys, monkeypatch):
    monkeypatch.setenv("LDP_WORKBOUND", "50")
    code, _, err = run(capsys, "count", "--q", "2", "--m", "6", "--n", "6", "--engine", "laurent")
    assert code == 3 and "50" in err


def test_workbound_flag_is_scoped(capsys, monkeypatch):
    monkeypatch.delenv("LDP_WORKBOUND", raising=False)
    code, _, _ = run(capsys, "count", "--q", "2", "--m", "6", "--n", "6", "--engine", "laurent",
                     "--workbound", "50")
    assert code == 3
    assert "LDP_WORKBOUND" not in os.environ
