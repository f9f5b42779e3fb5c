import pytest

from wreath.automata import (
    Fsa,
    Pda,
    RunBounds,
    StackAutomaton,
    SyncFsa,
    convolve,
    deconvolve,
    enumerate_accepted,
    fsa_run,
    is_convolution,
    machine_document,
    machine_from_document,
    pda_run,
    relation_audit,
    sa_run,
)
from wreath.errors import RunBoundsExceeded, StructureError
from wreath.groups import bfs_ball
from wreath.rep_z import LAMP_ALPHABET, LlRepresentation, ll_mult_fsa


def brackets_pda(pairs=(("(", ")"),)):
    """Accepts balanced words over the given bracket pairs."""
    alphabet = [c for pair in pairs for c in pair]
    table = {("s", None, None): [("q", ("Z",))], ("q", None, "Z"): [("f", ())]}
    for k, (open_, close) in enumerate(pairs):
        mark = f"X{k}"
        table[("q", open_, None)] = [("q", (mark,))]
        table[("q", close, mark)] = [("q", ())]
    stack = ["Z"] + [f"X{k}" for k in range(len(pairs))]
    return Pda(alphabet, stack, "s", ["f"], transitions=table, name="dyck")


def abc_machine():
    """Accepts a^n b^n c^n for n >= 1 by walking the pointer down and back up."""
    table = {
        ("s", None, None, True): [("a", ("push", "Z"))],
        ("a", "a", "Z", True): [("a", ("push", "X"))],
        ("a", "a", "X", True): [("a", ("push", "X"))],
        ("a", "b", "X", True): [("b", ("down",))],
        ("b", "b", "X", False): [("b", ("down",))],
        ("b", "c", "Z", False): [("c", ("up",))],
        ("c", "c", "X", False): [("c", ("up",))],
        ("c", None, "X", True): [("f", ("stay",))],
    }
    return StackAutomaton("abc", ["Z", "X"], ["s", "a", "b", "c", "f"], "s", ["f"], table, name="abc")


def test_convolve():
    assert convolve("01", "0") == (("0", "0"), ("1", "#"))
    assert convolve("", "ab") == (("#", "a"), ("#", "b"))
    assert convolve("AC", "AC") == (("A", "A"), ("C", "C"))
    assert deconvolve(convolve("01", "0")) == ("01", "0")


def test_is_convolution():
    assert is_convolution((("0", "#"), ("1", "#")))
    assert not is_convolution((("0", "#"), ("1", "1")))
    assert not is_convolution((("#", "#"),))
    with pytest.raises(StructureError):
        deconvolve((("#", "0"), ("0", "0")))


def test_fsa_run():
    alphabet = [("0", "0"), ("0", "1")]
    m = SyncFsa(alphabet, ["s", "t"], "s", ["t"], {("s", ("0", "0")): ["t"]})
    assert fsa_run(m, [("0", "0")])
    assert not fsa_run(m, [("0", "1")])
    assert not fsa_run(m, [])
    assert fsa_run(SyncFsa(alphabet, ["s"], "s", ["s"], {}), [])
    with pytest.raises(StructureError):
        fsa_run(m, [("1", "1")])


def test_fsa_transpose():
    m = SyncFsa([("0", "1"), ("1", "0")], ["s", "t"], "s", ["t"], {("s", ("0", "1")): ["t"]})
    assert m.transpose().accepts([("1", "0")])
    assert not m.transpose().accepts([("0", "1")])


def test_fsa_rejects_unknown_states():
    with pytest.raises(StructureError):
        Fsa("01", ["s"], "s", ["t"], {})
    with pytest.raises(StructureError):
        Fsa("01", ["s"], "s", ["s"], {("s", "2"): ["s"]})


def test_pda_run_brackets():
    dyck = brackets_pda()
    assert pda_run(dyck, "(())")
    assert pda_run(dyck, "")
    assert not pda_run(dyck, "(()")
    assert not pda_run(dyck, ")(")
    dyck2 = brackets_pda((("(", ")"), ("[", "]")))
    assert pda_run(dyck2, "([])[]")
    assert not pda_run(dyck2, "([)]")


def test_pda_run_bounds():
    pump = Pda("a", ["X"], "q", [], transitions={("q", None, None): [("q", ("X",))]}, name="pump")
    with pytest.raises(RunBoundsExceeded) as info:
        pda_run(pump, "")
    assert info.value.kind == "stack height"
    with pytest.raises(StructureError):
        RunBounds(max_silent=0)


def test_pda_deterministic_flag_is_honoured():
    table = {("q", "a", None): [("q", ()), ("r", ())]}
    m = Pda("a", [], "q", ["q", "r"], transitions=table, deterministic=True, name="twice")
    with pytest.raises(StructureError):
        pda_run(m, "a")


def test_pda_table_validation():
    with pytest.raises(StructureError):
        Pda("a", ["X"], "q", ["q"], transitions={("q", "a", "Y"): [("q", ())]})
    with pytest.raises(StructureError):
        Pda("a", ["X"], "q", ["q"])


def test_sa_run_trivial():
    m = StackAutomaton("a", [], ["q"], "q", ["q"], {})
    assert sa_run(m, "")
    assert not sa_run(m, "a")


def test_sa_run_abc():
    m = abc_machine()
    assert sa_run(m, "aabbcc")
    assert sa_run(m, "abc")
    assert not sa_run(m, "aabbc")
    assert not sa_run(m, "aabbbcc")


def test_sa_illegal_actions():
    with pytest.raises(StructureError):
        StackAutomaton("a", ["X"], ["q"], "q", [], {("q", "a", "X", False): [("q", ("push", "X"))]})
    with pytest.raises(StructureError):
        StackAutomaton("a", ["X"], ["q"], "q", [], {("q", "a", "X", True): [("q", ("up",))]})
    with pytest.raises(StructureError):
        StackAutomaton("a", ["X"], ["q"], "q", [], {("q", "a", None, True): [("q", ("jump",))]})


def test_enumerate_accepted():
    loop = Fsa("1", ["q"], "q", ["q"], {("q", "1"): ["q"]})
    assert enumerate_accepted(loop, 3) == ["", "1", "11", "111"]
    assert enumerate_accepted(loop, 0) == [""]
    assert enumerate_accepted(brackets_pda(), 4) == ["", "()", "(())", "()()"]
    nothing = Fsa("1", ["q"], "q", [], {})
    assert enumerate_accepted(nothing, 0) == []


def test_machine_documents_rebuild():
    for m in (ll_mult_fsa("h"), brackets_pda(), abc_machine()):
        document = machine_document(m)
        again = machine_from_document(document)
        assert machine_document(again) == document
    rebuilt = machine_from_document(machine_document(abc_machine()))
    assert sa_run(rebuilt, "abc")


def test_relation_audit(ll):
    rep = LlRepresentation()
    ball = bfs_ball(ll, 4)
    assert relation_audit(ll_mult_fsa("h"), rep, "h", ball, 6).passed

    pairs = LAMP_ALPHABET.pairs()
    nothing = SyncFsa(pairs, ["s"], "s", [], {}, name="nothing")
    report = relation_audit(nothing, rep, "h", bfs_ball(ll, 1), 4)
    assert len(report.missed) >= 1
    assert not report.passed

    everything = SyncFsa(pairs, ["s"], "s", ["s"], {("s", p): ["s"] for p in pairs}, name="everything")
    report = relation_audit(everything, rep, "h", bfs_ball(ll, 1), 2)
    assert len(report.spurious) >= 1
    assert report.to_dict()["status"] == "fail"
