from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from pointlikes.cli import run_command
from pointlikes.errors import InputError
from pointlikes.formats import DfaDescription, format_cayley, parse_cayley, read_cayley, transition_semigroup
from pointlikes.semigroup import cyclic_group, right_zero

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = run_command([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_cayley_examples():
    assert parse_cayley("2\n0 1\n1 0\n").table == cyclic_group(2).table
    S = read_cayley(DATA / "z2.sg")
    assert S.identity == 0
    with pytest.raises(InputError, match=r"\(1\*1\)\*2"):
        read_cayley(DATA / "nonassoc.sg")


@pytest.mark.parametrize("text,message", [
    ("", "empty"),
    ("x\n", "line 1"),
    ("2\n0 1\n", "expected 2 rows"),
    ("2\n0 1\n1\n", "line 3"),
    ("2\n0 1\n1 0\n0 0\n", "more than 2 rows"),
    ("2\n0 1\n1 a\n", "non-integer"),
    ("2\n0 1\n1 2\n", "range"),
    ("2\n0 1\n1 0\nidentity 1\n", "identity"),
])
def test_parse_cayley_errors(text, message):
    with pytest.raises(InputError, match=message):
        parse_cayley(text)


def test_format_round_trip():
    for S in (cyclic_group(6), right_zero(3), read_cayley(DATA / "t2.sg")):
        assert parse_cayley(format_cayley(S, comment="round trip")) == S


def test_transition_semigroup_examples():
    even = DfaDescription(2, ["a"], {"a": [1, 0]})
    S, ts = transition_semigroup(even)
    assert S.order == 2 and ts.words == [("a",), ("a", "a")]
    assert sorted(map(sorted, S.table)) == [[0, 1], [0, 1]]
    consts = DfaDescription.from_json(json.loads((DATA / "constants.json").read_text()))
    assert transition_semigroup(consts)[0].table == right_zero(2).table
    single = DfaDescription(1, ["a", "b"], {"a": [0], "b": [0]})
    assert transition_semigroup(single)[0].order == 1
    with pytest.raises(InputError):
        DfaDescription(2, ["a"], {"a": [0, 2]})
    with pytest.raises(InputError):
        DfaDescription.from_json({"alphabet": ["a"]})


def test_syntactic_round_trip(tmp_path, capsys):
    out = tmp_path / "even.sg"
    code, _, _ = run(capsys, "syntactic", DATA / "even_a.json", "--out", out)
    assert code == 0
    S = read_cayley(out)
    assert S == transition_semigroup(DfaDescription(2, ["a"], {"a": [1, 0]}))[0]


def test_check_and_green(capsys):
    code, out, _ = run(capsys, "check", DATA / "t2.sg")
    assert code == 0 and "identity: 0" in out
    code, out, _ = run(capsys, "green", DATA / "t2.sg", "--pi", "none")
    lines = [line for line in out.splitlines() if line.startswith("J")]
    assert code == 0 and len(lines) == 2
    assert "|Gamma_R|=2 pi'-free=no" in lines[0]
    assert "|Gamma_R|=1 pi'-free=yes" in lines[1]


def test_membership(capsys):
    code, out, _ = run(capsys, "membership", DATA / "z2.sg", "--pi", "none")
    assert code == 0 and out.startswith("not a member")
    code, out, _ = run(capsys, "membership", DATA / "z2.sg", "--pi", "2")
    assert code == 0 and out.startswith("member")


def test_pointlikes_command(tmp_path, capsys):
    js = tmp_path / "cp.json"
    code, out, _ = run(capsys, "pointlikes", DATA / "z6.sg", "--pi", "2", "--json", js, "--query", "0,3")
    assert code == 0
    assert "{0,2,4}" in out and "{1,3,5}" in out and "{0,3} is not pointlike" in out
    data = json.loads(js.read_text())
    assert [m for m, flag in zip(data["members"], data["maximal"]) if flag] == [[0, 2, 4], [1, 3, 5]]
    code, _, err = run(capsys, "pointlikes", DATA / "z6.sg", "--pi", "2", "--query", "9")
    assert code == 2 and "input error" in err


def test_certify_command(tmp_path, capsys):
    js = tmp_path / "c.json"
    code, out, _ = run(capsys, "certify", DATA / "z2.sg", "--pi", "none", "--json", js)
    assert code == 0 and "certificate: accepted" in out
    data = json.loads(js.read_text())
    assert data["status"] == "accepted" and all(data["checks"].values())
    assert data["sPi"]["numElements"] == 1
    again = tmp_path / "c2.json"
    run(capsys, "certify", DATA / "z2.sg", "--pi", "none", "--json", again)
    assert js.read_bytes() == again.read_bytes()


def test_certify_resource_cap(capsys):
    code, out, _ = run(capsys, "certify", DATA / "rz_identity.sg", "--pi", "none", "--max-flags", "1")
    assert code == 3 and "unverified" in out
    code, _, err = run(capsys, "certify", DATA / "z6.sg", "--pi", "none", "--max-cp", "3")
    assert code == 3 and "resource limit" in err


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "z2.sg", "--pi", "none", "--max-order", "2")
    assert code == 0 and "failures: 0" in out and "exhaustive" in out
    code, _, _ = run(capsys, "oracle", DATA / "z2.sg", "--pi", "none", "--max-order", "4")
    assert code == 2


def test_input_errors(capsys):
    assert run(capsys, "check", DATA / "nonassoc.sg")[0] == 2
    assert run(capsys, "check", DATA / "missing.sg")[0] == 2
    assert run(capsys, "membership", DATA / "z2.sg", "--pi", "4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pointlikes", "pointlikes", str(DATA / "z6.sg"), "--pi", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "{0,2,4}" in proc.stdout
