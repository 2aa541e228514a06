import json
import subprocess
import sys

import pytest

from insep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_decide(capsys):
    code, cert, _ = run(capsys, "janiczak", "decide", "--sentence", "A 5")
    assert code == 0
    assert cert["outputs"]["verdict"] == "NotProvable"
    assert {"command", "inputs", "outputs", "verification", "tool_version", "order_version"} <= cert.keys()


def test_bad_input_exit_code(capsys):
    code, _, err = run(capsys, "janiczak", "decide", "--sentence", "exists x")
    assert code == 2 and "insep:" in err
    with pytest.raises(SystemExit) as e:
        main(["janiczak", "decide", "--bogus"])
    assert e.value.code == 2


def test_recfun_run(capsys):
    code, cert, _ = run(capsys, "recfun", "run", "--program", "call r0 add r0 r1\nhalt r0", "--args", "3,4")
    assert code == 0 and "7" in json.dumps(cert["outputs"])


def test_build_x_is_reproducible(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"x{k}.json"
        assert main(["construct", "build-x", "--depth", "2", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["outputs"]["F_prefix"] == [0, 2, 4]


def test_resource_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("INSEP_DEPTH_LIMIT", "2")
    code, cert, _ = run(capsys, "construct", "build-x", "--depth", "3")
    assert code == 3 and "error" in cert["outputs"]


def test_witness_oplus(capsys):
    code, cert, _ = run(capsys, "construct", "witness-oplus", "--context", "~P", "--delay1", "300")
    assert code == 0 and cert["outputs"]["case"] == "b"
    assert all(v["result"] for v in cert["verification"])


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "insep.cli", "logic", "parse", "--sentence", "A 1 & ~A 2"],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "logic parse"
