"""State graphs of machines as networkx graphs and DOT text."""

import logging
from typing import Any, Dict, List

import networkx as nx

from .automata import Machine, machine_document

logger = logging.getLogger(__name__)

START = "__start"


def _symbol_text(symbol: Any) -> str:
    if symbol is None:
        return "eps"
    if isinstance(symbol, list):
        return "/".join(symbol)
    return str(symbol)


def _edge_labels(document: Dict[str, Any]) -> List[tuple]:
    """(source, target, label) triples in document order."""
    kind = document["type"]
    out = []
    for row in document["transitions"]:
        if kind == "fsa":
            source, symbol, targets = row
            for target in targets:
                out.append((source, target, _symbol_text(symbol)))
        elif kind == "pda":
            source, symbol, top, moves = row
            for target, push in moves:
                text = f"{_symbol_text(symbol)}, {top or 'eps'} -> {''.join(push) or 'eps'}"
                out.append((source, target, text))
        else:
            source, symbol, under, at_top, moves = row
            where = f"{under or 'empty'}{'^' if at_top else ''}"
            for target, action in moves:
                out.append((source, target, f"{_symbol_text(symbol)}, {where}: {' '.join(action)}"))
    return out


class GraphView:
    """Builds the state graph of a machine and renders it."""

    def __init__(self, machine: Machine):
        self.document = machine_document(machine)
        self.graph = self.build_graph()

    def build_graph(self) -> nx.MultiDiGraph:
        doc = self.document
        G = nx.MultiDiGraph(name=doc["name"])
        accepting = set(doc["accepting"])
        for state in doc["states"]:
            G.add_node(state, accepting=state in accepting, initial=state == doc["initial"])
        for source, target, label in _edge_labels(doc):
            G.add_edge(source, target, label=label)
        return G

    def reachable(self) -> int:
        """Number of states reachable from the initial state."""
        initial = self.document["initial"]
        return len(nx.descendants(self.graph, initial)) + 1

    def summary(self) -> Dict[str, Any]:
        return {
            "type": self.document["type"],
            "states": self.graph.number_of_nodes(),
            "transitions": self.graph.number_of_edges(),
            "accepting": len(self.document["accepting"]),
            "reachable": self.reachable(),
        }

    def to_dot(self) -> str:
        """DOT text with a fixed ordering of nodes and edges."""
        G = self.graph
        lines = [f'digraph "{G.graph["name"]}" {{', "  rankdir=LR;", f'  "{START}" [shape=point];']
        for state in sorted(G.nodes()):
            shape = "doublecircle" if G.nodes[state]["accepting"] else "circle"
            lines.append(f'  "{state}" [shape={shape}];')
        lines.append(f'  "{START}" -> "{self.document["initial"]}";')
        edges = sorted((u, v, data["label"]) for u, v, data in G.edges(data=True))
        for source, target, label in edges:
            escaped = label.replace('"', '\\"')
            lines.append(f'  "{source}" -> "{target}" [label="{escaped}"];')
        lines.append("}")
        logger.debug("dot for %s: %d edges", G.graph["name"], len(edges))
        return "\n".join(lines) + "\n"


def machine_dot(machine: Machine) -> str:
    return GraphView(machine).to_dot()


def machine_summary(machine: Machine) -> Dict[str, Any]:
    return GraphView(machine).summary()
