import json

import jsonschema
import pytest

from eulerperiod import conjectures
from eulerperiod.cli import load_schema, run

from .oracles import naive_rows

TABLE_1 = [2, 4, 4, 4, 8, 8, 8, 8, 10, 12, 12, 16, 16, 16, 16, 16, 18, 20]


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def _json(capsys, *argv):
    code, out = _run(capsys, *argv, "--json")
    record = json.loads(out)
    jsonschema.validate(record, load_schema("record"))
    jsonschema.validate(record["payload"], load_schema(record["command"]))
    return code, record


def test_euler_mod3_csv(capsys):
    assert _run(capsys, "euler", "--mod", "3", "--count", "13") == (0, "1,1,1,2,2,1,1,2,2,1,1,2,2\n")


def test_ftransform_csv(capsys):
    code, out = _run(capsys, "ftransform", "--seed", "2,4,4,4", "--count", "16")
    assert (code, out) == (0, "2,4,4,4,8,8,8,8,10,12,12,16,16,16,16,16\n")


def test_arnold_json(capsys):
    code, rec = _json(capsys, "arnold", "--kmax", "18")
    assert code == 0
    assert rec["payload"]["u"] == TABLE_1


def test_entringer_csv(capsys):
    code, out = _run(capsys, "entringer", "--rows", "5")
    assert out == "1\n0,1\n1,1,0\n0,1,2,2\n5,5,4,2,0\n"


def test_valuations_inf_and_null(capsys):
    code, out = _run(capsys, "valuations", "--rows", "5", "--cap", "8")
    assert out.splitlines()[-1] == "0,0,2,1,inf"
    code, rec = _json(capsys, "valuations", "--rows", "5", "--cap", "8")
    assert rec["payload"]["rows"][3] == [None, 0, 1, 1]
    assert rec["payload"]["cap"] == 8


def test_large_integers_are_decimal_strings(capsys):
    code, rec = _json(capsys, "euler", "--count", "40")
    assert rec["payload"]["terms"][39] == str(sum(naive_rows(39)[-1]))
    assert int(rec["payload"]["terms"][39]) > 2**64
    assert int(rec["payload"]["terms"][12]) == 2702765
    assert rec["payload"]["modulus"] is None


def test_every_command_validates(capsys, tmp_path):
    cases = [
        ("euler", "-q", "7", "--count", "20"),
        ("entringer", "--rows", "6", "--mod", "5"),
        ("valuations", "--rows", "6"),
        ("period", "-q", "9", "--window", "300"),
        ("arnold", "--kmax", "8"),
        ("ftransform", "--seed", "1", "--count", "4"),
        ("verify", "--odd-max", "9", "--pow2-max", "2", "--composite-max", "6", "--kmax", "4"),
    ]
    for argv in cases:
        code, rec = _json(capsys, *argv)
        assert code == 0, argv
        assert rec["command"] == argv[0]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "e.csv"
    assert run(["euler", "--count", "5", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_text() == "1,1,1,2,5\n"


def test_payload_is_deterministic(capsys):
    argv = ("verify", "--odd-max", "30", "--pow2-max", "3", "--composite-max", "20", "--kmax", "8")
    _, a = _json(capsys, *argv)
    _, b = _json(capsys, *argv)
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_exit_code_inconclusive(capsys):
    code, out = _run(capsys, "period", "-q", "3", "--window", "13", "--csv")
    assert code == 2
    assert out.strip().endswith("inconclusive")
    code, _ = _run(capsys, "arnold", "--kmax", "64", "--rows", "16", "--max-rows", "16")
    assert code == 2


def test_exit_code_mismatch(capsys, monkeypatch):
    real = conjectures.predict

    def wrong(q, u=None):
        pred = real(q, u)
        return conjectures.Prediction(q, pred.s_pred + 1, pred.d_pred, pred.provenance, pred.source)

    monkeypatch.setattr(conjectures, "predict", wrong)
    code, rec = _json(capsys, "verify", "--odd-max", "3", "--pow2-max", "0", "--composite-max", "0", "--kmax", "0")
    assert code == 1
    assert rec["payload"]["summary"]["mismatch"] == 1
    assert "witness" in rec["payload"]["rows"][0]


@pytest.mark.parametrize(
    "argv",
    [
        ["euler", "--count", "x"],
        ["ftransform", "--seed", "1,-2"],
        ["ftransform", "--seed", "a,b"],
        ["bogus"],
        [],
        ["period"],
        ["euler", "--format", "xml"],
        ["verify", "--odd-max", "0", "--pow2-max", "0", "--composite-max", "0", "--kmax", "0"],
        ["verify", "--odd-max", "-1"],
    ],
)
def test_exit_code_usage(argv, capsys):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 3


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "eulerperiod", "euler", "--mod", "3", "--count", "5"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout == "1,1,1,2,2\n"
