"""Line trees of Z2 wr F2 elements and their bracketed words.

A reduced word of F2 is a run of syllables a^i b^j a^k ...  The root is the
horizontal line through e.  A cell of a horizontal line carries the vertical
line through it as its child, a cell of a vertical line the horizontal one.
Index 0 of a child line is the parent cell itself.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .bracket_logic import CLOSE, OPEN, SYMBOLS, symbol_for
from .errors import WordParseError
from .groups import BaseKind, FreeWord, WreathElement, free_reduce, make_element

BRACKET_OF = {"h": ("(", ")"), "v": ("[", "]")}


@dataclass
class Cell:
    """One vertex of F2 on a line."""

    lamp: int = 0
    origin: bool = False
    light: bool = False
    child: Optional["Node"] = None


class Node:
    """A horizontal ("h") or vertical ("v") line of the tree."""

    def __init__(self, orientation: str, depth: int = 0):
        """Initialize an empty line.

        Args:
            orientation: "h" for lines along a, "v" for lines along b
            depth: 0 for the root line
        """
        self.orientation = orientation
        self.depth = depth
        self.cells: Dict[int, Cell] = {}

    def cell(self, index: int) -> Cell:
        return self.cells.setdefault(index, Cell())

    def add_child(self, index: int) -> "Node":
        """The line crossing this one at ``index``, created on first use."""
        cell = self.cell(index)
        if cell.child is None:
            cell.child = Node("v" if self.orientation == "h" else "h", self.depth + 1)
        return cell.child

    def span(self) -> Tuple[int, int]:
        indices = list(self.cells) + [0]
        return min(indices), max(indices)


def syllables(w: FreeWord) -> List[int]:
    """Exponents of a^i b^j a^k ...; the first (a) exponent may be 0."""
    out: List[int] = []
    axis = None
    for letter in w.letters:
        this = "a" if letter in "aA" else "b"
        sign = 1 if letter.islower() else -1
        if this != axis:
            if not out and this == "b":
                out.append(0)
            out.append(0)
            axis = this
        out[-1] += sign
    return out or [0]


def from_syllables(exps: List[int]) -> FreeWord:
    letters = []
    for i, e in enumerate(exps):
        letter = "a" if i % 2 == 0 else "b"
        letters.append(letter * e if e >= 0 else letter.upper() * -e)
    return free_reduce("".join(letters))


def _place(root: Node, point: FreeWord) -> Cell:
    exps = syllables(point)
    node, index = root, exps[0]
    for e in exps[1:]:
        node = node.add_child(index)
        index = e
    return node.cell(index)


def f2_tree(g: WreathElement) -> Node:
    """Line tree holding every lit lamp, the lamplighter and the origin."""
    root = Node("h")
    for point, value in g.lamps:
        _place(root, point).lamp = value
    _place(root, g.pos).light = True
    root.cell(0).origin = True
    return root


def _write(node: Node, anchor: Optional[str]) -> List[str]:
    lo, hi = node.span()
    out: List[str] = []
    for k in range(lo, hi + 1):
        if k == 0 and anchor is not None:
            out.append(anchor)
            continue
        cell = node.cells.get(k, Cell())
        if cell.child is None:
            out.append(symbol_for("plain", cell.lamp, cell.origin, cell.light))
            continue
        kind = "D" if node.orientation == "h" else "E"
        opening, closing = BRACKET_OF[node.orientation]
        inner = symbol_for(kind, cell.lamp, cell.origin, cell.light)
        out += [opening] + _write(cell.child, inner) + [closing]
    return out


def linearize(root: Node) -> str:
    return "".join(_write(root, None))


OPENER = {"h": "(", "v": "["}
CLOSER = {"v": ")", "h": "]"}


def _line(orientation: str, depth: int, cells: List[Cell], zero: int) -> Node:
    node = Node(orientation, depth)
    node.cells = {k - zero: c for k, c in enumerate(cells) if depth == 0 or k != zero}
    return node


class _Parser:
    """Recursive descent from a bracketed word to a line tree."""

    def __init__(self, word: str):
        self.word = word
        self.pos = 0
        self.origin: Optional[int] = None
        self.light: Optional[int] = None

    def fail(self, reason: str, position: Optional[int] = None) -> WordParseError:
        return WordParseError(self.word, self.pos if position is None else position, reason)

    def _mark(self, code: str) -> None:
        _, _, origin, light = SYMBOLS[code]
        if origin:
            if self.origin is not None:
                raise self.fail("second origin marker")
            self.origin = self.pos
        if light:
            if self.light is not None:
                raise self.fail("second lamplighter marker")
            self.light = self.pos

    def segment(self, orientation: str, depth: int, opened_at: Optional[int]) -> Tuple[List[Cell], Optional[int]]:
        """Items of one line up to its closing bracket, and the anchor index."""
        cells: List[Cell] = []
        positions: List[int] = []
        anchor: Optional[int] = None
        closer = CLOSER[orientation] if depth else None
        while True:
            if self.pos == len(self.word):
                if closer:
                    raise self.fail("unclosed bracket", opened_at)
                break
            c = self.word[self.pos]
            if c in CLOSE:
                if c != closer:
                    raise self.fail(f"unmatched {c}")
                break
            positions.append(self.pos)
            if c in OPEN:
                cells.append(self._bracketed(orientation, depth))
                continue
            if c not in SYMBOLS:
                raise self.fail("unknown symbol")
            kind, bit, origin, light = SYMBOLS[c]
            if kind != "plain":
                if not depth:
                    raise self.fail("anchor symbol outside brackets")
                if (kind == "D") != (orientation == "v"):
                    raise self.fail(f"{kind}-symbol on a line of the wrong direction")
                if anchor is not None:
                    raise self.fail("second anchor in one bracket pair")
                if origin and depth != 1:
                    raise self.fail("origin anchor below the first level")
                anchor = len(cells)
            elif origin and depth:
                raise self.fail("origin symbol inside brackets")
            self._mark(c)
            cells.append(Cell(bit, origin, light))
            self.pos += 1
        self._edges(positions, depth)
        return cells, anchor

    def _bracketed(self, orientation: str, depth: int) -> Cell:
        opened_at = self.pos
        if self.word[opened_at] != OPENER[orientation]:
            raise self.fail(f"{self.word[opened_at]} cannot open on this line")
        self.pos += 1
        inner = "v" if orientation == "h" else "h"
        cells, anchor = self.segment(inner, depth + 1, opened_at)
        if anchor is None:
            raise self.fail("bracket pair without an anchor")
        if len(cells) < 2:
            raise self.fail("brackets enclose fewer than two symbols")
        self.pos += 1
        cell = cells[anchor]
        cell.child = _line(inner, depth + 1, cells, anchor)
        return cell

    def _edges(self, positions: List[int], depth: int) -> None:
        if not positions:
            if not depth:
                raise self.fail("empty word", 0)
            return
        if self.word[positions[0]] == "0":
            raise self.fail("0 right after an opening bracket" if depth else "leading 0", positions[0])
        if self.word[positions[-1]] == "0":
            raise self.fail("0 right before a closing bracket" if depth else "trailing 0", positions[-1])


def parse_tree(word: str) -> Node:
    """Parse a bracketed word into a line tree indexed from the origin.

    The one-letter word ``A`` is the identity and gets its lamplighter at e.

    Raises:
        WordParseError: At the first offending position
    """
    parser = _Parser(word)
    cells, _ = parser.segment("h", 0, None)
    if parser.origin is None:
        raise parser.fail("no origin marker", len(word))
    if word == "B":
        raise parser.fail("the identity is written A", 0)
    if parser.light is None:
        if word != "A":
            raise parser.fail("no lamplighter marker", len(word))
        cells[0].light = True
    origin = next(k for k, c in enumerate(cells) if c.origin)
    return _line("h", 0, cells, origin)


def tree_element(root: Node) -> WreathElement:
    """Read lamps and the lamplighter back off a line tree."""
    lamps: Dict[FreeWord, int] = {}
    pos = FreeWord()

    def walk(node: Node, prefix: List[int]) -> None:
        nonlocal pos
        for k, cell in node.cells.items():
            exps = prefix + [k]
            point = from_syllables(exps)
            if cell.lamp:
                lamps[point] = cell.lamp
            if cell.light:
                pos = point
            if cell.child is not None:
                walk(cell.child, exps)

    walk(root, [])
    return make_element(BaseKind.F2, "Z2", lamps, pos)
