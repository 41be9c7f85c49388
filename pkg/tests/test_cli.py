from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from modlie import catalog
from modlie.cli import main, parse_expect, parse_ideal, UsageError

REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "field", "source", "entries"],
    "properties": {
        "version": {"type": "string"},
        "field": {"type": "object", "required": ["kind"]},
        "source": {"type": "string"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "anchor", "status", "data"],
                "properties": {
                    "id": {"type": "string"},
                    "anchor": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skip", "window-certified"]},
                    "data": {"type": "object"},
                },
            },
        },
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    return code, rep


def values(rep):
    return {e["id"]: e["data"].get("value") for e in rep["entries"]}


def test_analyze_rvirasoro(capsys):
    code, rep = run_json(capsys, "analyze", "builtin:rvirasoro?p=5")
    assert code == 0
    v = values(rep)
    assert v["dim"] == 6 and v["center"] == 1 and v["h1"] == 0 and v["h2"] == 0
    assert v["der_dim"] == 5 and v["complete"] is False and v["der_simple"] == "simple"
    assert rep["field"] == {"kind": "prime", "p": 5}


def test_analyze_expectations(capsys):
    code, rep = run_json(capsys, "analyze", "builtin:witt?p=5", "--expect", "h2=1", "--expect", "complete=true")
    assert code == 0
    code, rep = run_json(capsys, "analyze", "builtin:witt?p=5", "--expect", "h2=0")
    assert code == 1
    bad = [e for e in rep["entries"] if e["status"] == "fail"]
    assert [e["id"] for e in bad] == ["h2"] and bad[0]["data"]["value"] == 1
    code, out, err = run(capsys, "analyze", "builtin:witt?p=5", "--expect", "colour=red")
    assert code == 2 and "unknown --expect key" in err


def test_analyze_from_file(tmp_path, capsys):
    f = tmp_path / "sl2.json"
    f.write_text(catalog.sl(2).to_json())
    code, rep = run_json(capsys, "analyze", str(f))
    assert code == 0 and rep["field"] == {"kind": "rational"}
    assert values(rep)["simple"] == "simple"


@pytest.mark.parametrize("content", ["{bad", '{"field": {"kind": "prime", "p": 4}, "dim": 2}',
                                     '{"field": {"kind": "prime", "p": 5}}'])
def test_malformed_input_exit_2(tmp_path, capsys, content):
    f = tmp_path / "bad.json"
    f.write_text(content)
    code, out, err = run(capsys, "analyze", str(f))
    assert code == 2 and err.startswith("error:")


def test_missing_file_and_bad_builtin(capsys):
    assert run(capsys, "analyze", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "analyze", "builtin:nonesuch")[0] == 2
    assert run(capsys, "analyze", "builtin:witt2_window?N=4")[0] == 2
    assert run(capsys, "uce", "builtin:witt?p=6")[0] == 2


def test_uce_command(capsys):
    code, rep = run_json(capsys, "uce", "builtin:witt?p=5")
    assert code == 0
    v = values(rep)
    assert v["hat_dim"] == 6 and v["kernel_dim"] == 1 and v["H1_hat"] == 0 and v["H2_hat"] == 0
    code, rep = run_json(capsys, "uce", "builtin:abelian?n=2&p=5")
    assert code == 1 and rep["entries"][0]["id"] == "perfect"


def test_predict_command(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, rep = run_json(capsys, "predict", "builtin:witt?p=5", "--ideal", "full", "--verify", "-o", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == rep
    by_id = {e["id"]: e["data"] for e in rep["entries"]}
    assert by_id["agree"]["predict"] is True and by_id["direct"]["L_dim"] == 5
    code, out, err = run(capsys, "predict", "builtin:rvirasoro?p=5")
    assert code == 2 and "not simple" in err


def test_verify_char0(capsys):
    code, rep = run_json(capsys, "verify", "char0", "--window", "4")
    assert code == 0
    assert [e["id"] for e in rep["entries"]] == ["graded_witt_h2", "virasoro_window", "degree_derivation"]
    assert all(e["status"] == "window-certified" for e in rep["entries"])
    assert run(capsys, "verify", "char0", "--window", "2")[0] == 2


def test_verify_rejects_bad_prime(capsys):
    code, out, err = run(capsys, "verify", "primchar", "--p", "4")
    assert code == 2 and "not prime" in err
    assert run(capsys, "verify", "primchar", "--p", "3")[0] == 2


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "rvirasoro" in out.split()
    code, out, _ = run(capsys, "catalog", "witt?p=5")
    assert code == 0 and json.loads(out)["dim"] == 5


def test_text_table(capsys):
    code, out, _ = run(capsys, "analyze", "builtin:sl?n=2&p=5")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("source: builtin:sl?n=2&p=5")
    assert lines[1].split()[:3] == ["id", "status", "data"]


def test_reports_are_deterministic(capsys):
    a = run_json(capsys, "analyze", "builtin:witt?p=7", "--seed", "3")[1]
    b = run_json(capsys, "analyze", "builtin:witt?p=7", "--seed", "3")[1]
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_parsers():
    assert parse_ideal("full") == "full" and parse_ideal("0") == "zero"
    assert parse_ideal("1,2;0,1") == [["1", "2"], ["0", "1"]]
    assert parse_expect(["h2=1"]) == {"h2": "1"}
    with pytest.raises(UsageError):
        parse_expect(["h2"])


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "modlie.cli", "catalog"], capture_output=True, text=True)
    assert r.returncode == 0 and "witt" in r.stdout
    r = subprocess.run([sys.executable, "-m", "modlie.cli", "verify", "nonsense"], capture_output=True, text=True)
    assert r.returncode == 2
