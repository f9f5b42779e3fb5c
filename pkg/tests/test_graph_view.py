from wreath.automata import Fsa
from wreath.graph_view import GraphView, machine_dot, machine_summary
from wreath.rep_grid import grid_h_fsa, grid_x_sa
from wreath.rep_z import ll_mult_fsa


def test_summary_counts():
    m = Fsa("01", ["s", "t", "u"], "s", ["t"], {("s", "0"): ["t"], ("t", "1"): ["s", "t"]}, name="small")
    summary = machine_summary(m)
    assert summary == {"type": "fsa", "states": 3, "transitions": 3, "accepting": 1, "reachable": 2}


def test_graph_attributes():
    view = GraphView(grid_h_fsa())
    assert view.graph.nodes["q0"]["initial"]
    assert view.graph.nodes["q1"]["accepting"]
    assert not view.graph.nodes["q1z"]["accepting"]


def test_dot_is_stable():
    first = machine_dot(ll_mult_fsa("a"))
    assert first == machine_dot(ll_mult_fsa("a"))
    assert first.startswith('digraph "ll:a" {')
    assert '"__start" -> "q0";' in first
    assert first.rstrip().endswith("}")


def test_stack_automaton_view():
    summary = GraphView(grid_x_sa()).summary()
    assert summary["type"] == "sa"
    assert summary["accepting"] >= 1
    assert summary["reachable"] == summary["states"]
