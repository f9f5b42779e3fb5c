import json

from wreath.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_encode_decode(capsys):
    assert run(capsys, "encode", "--group", "ll", "pos=0;lamps=")[:2] == (0, "B")
    assert run(capsys, "decode", "--group", "ll", "AC")[:2] == (0, "pos=1;lamps=")
    assert run(capsys, "encode", "--group", "grid", "pos=(0,0);lamps=(1,1)")[:2] == (0, "C01")
    assert run(capsys, "encode", "--group", "gz:z", "pos=0;lamps=0:1")[:2] == (0, "B1")
    code, out, _ = run(capsys, "encode", "--group", "f2", "pos=a;lamps=", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"word": "AC"}


def test_mul(capsys):
    assert run(capsys, "mul", "--group", "ll", "pos=1;lamps=", "pos=0;lamps=0")[:2] == (0, "pos=1;lamps=1")


def test_length(capsys):
    assert run(capsys, "length", "--group", "ll", "pos=0;lamps=1")[:2] == (0, "3")
    assert run(capsys, "length", "--group", "ll", "pos=0;lamps=1", "--method", "formula")[:2] == (0, "3")
    assert run(capsys, "length", "--group", "grid", "pos=(0,0);lamps=(0,-2)")[:2] == (0, "5")
    code, _, err = run(capsys, "length", "--group", "grid", "pos=(0,0);lamps=", "--method", "formula")
    assert code == 2
    assert "error" in err


def test_input_errors(capsys):
    assert run(capsys, "encode", "--group", "ll", "pos=x;lamps=")[0] == 2
    assert run(capsys, "decode", "--group", "ll", "0B")[0] == 2
    assert run(capsys, "encode", "--group", "z3", "pos=0;lamps=")[0] == 2
    assert run(capsys, "encode", "--group", "ll", "pos=(0,0);lamps=")[0] == 2
    assert run(capsys, "encode")[0] == 2
    assert run(capsys, "frobnicate", "--group", "ll")[0] == 2


def test_ball_cap(capsys):
    assert run(capsys, "length", "--group", "grid", "pos=(0,0);lamps=(0,-3)", "--ball-cap", "20")[0] == 3
    assert run(capsys, "verify", "--group", "grid", "--radius", "3", "--ball-cap", "10")[0] == 3


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--group", "ll", "--radius", "2", "--maxlen", "4")
    assert code == 0
    assert out.splitlines()[0].startswith("ll: pass")
    code, out, _ = run(capsys, "verify", "--group", "ll", "--radius", "2", "--maxlen", "4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "group,check,status"
    assert "ll,round_trip,pass" in lines
    code, out, _ = run(capsys, "verify", "--group", "ll", "--radius", "2", "--maxlen", "4", "--format", "json")
    assert json.loads(out)["status"] == "pass"


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--group", "ll", "--machine", "h", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["type"] == "fsa"
    assert document["name"] == "ll:h"
    code, out, _ = run(capsys, "export", "--group", "grid", "--machine", "grid:Mx", "--format", "dot")
    assert code == 0
    assert out.startswith('digraph "grid:x" {')
    code, out, _ = run(capsys, "export", "--group", "gz:z", "--machine", "g1", "--format", "json")
    assert json.loads(out)["name"] == "gz:z:g1"
    code, _, err = run(capsys, "export", "--group", "ll", "--machine", "Mx")
    assert code == 2
    assert "known: L, a, a-1, h" in err


def test_parser_defaults():
    args = build_parser().parse_args(["verify", "--group", "f2"])
    assert args.radius is None
    assert args.format == "text"
    assert args.verbose == 0
