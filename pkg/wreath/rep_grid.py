"""Spiral representation of Z2 wr Z^2.

Cells of Z^2 are numbered 1, 2, 3, ... along a square spiral that starts at
the origin and turns counter-clockwise.  A word has one symbol per cell up to
the last interesting one; the lamplighter cell carries the C-symbol.

The multipliers for x and y cannot be finite automata.  They are one-way
stack automata whose pointer bounces through a stack of height
ceil(sqrt(m)) while the first m letters are read, which is enough to measure
the jump between the two C-symbols.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .automata import Fsa, StackAutomaton, SymbolTable, SyncFsa, sa_trace_heights
from .constants import PAD
from .errors import StructureError, WordParseError
from .groups import BaseKind, DistanceMap, WreathElement, grid_spec, make_element
from .rep_z import BoundsReport, check_bounds
from .utils import ceil_sqrt

logger = logging.getLogger(__name__)

GRID_ALPHABET = SymbolTable("grid", (("0", "0"), ("1", "1"), ("C0", "C"), ("C1", "c")))

Point = Tuple[int, int]

DIRECTIONS: Dict[str, Point] = {"x": (1, 0), "x-1": (-1, 0), "y": (0, 1), "y-1": (0, -1)}

# Lamplighter on a lit lamp at (0, -2), cell 23.
REFERENCE_WORD = "0100011000000100001000c000101111000011000101100001"


def spiral(k: int) -> Point:
    """Cell number k (1-based) of the spiral."""
    if k < 1:
        raise StructureError(f"spiral cells are numbered from 1, got {k}")
    if k == 1:
        return (0, 0)
    r = ceil_sqrt(k) // 2
    j = k - (2 * r - 1) ** 2 - 1
    side, t = divmod(j, 2 * r)
    if side == 0:
        return (r, -(r - 1) + t)
    if side == 1:
        return (r - 1 - t, r)
    if side == 2:
        return (-r, r - 1 - t)
    return (-r + 1 + t, -r)


def spiral_inv(p: Point) -> int:
    """Number of the cell at p; inverse of ``spiral``."""
    x, y = p
    r = max(abs(x), abs(y))
    if r == 0:
        return 1
    base = (2 * r - 1) ** 2 + 1
    if x == r and y > -r:
        return base + y + r - 1
    if y == r:
        return base + 2 * r + r - 1 - x
    if x == -r:
        return base + 4 * r + r - 1 - y
    return base + 6 * r + x + r - 1


def spiral_walk(count: int) -> Iterator[Point]:
    """The first ``count`` spiral cells, produced by walking the rings."""
    if count <= 0:
        return
    yield (0, 0)
    produced = 1
    r = 0
    while produced < count:
        r += 1
        x, y = r, -(r - 1)
        path = [(x, y)]
        for _ in range(2 * r - 1):
            y += 1
            path.append((x, y))
        for dx, dy in ((-1, 0), (0, -1), (1, 0)):
            for _ in range(2 * r):
                x, y = x + dx, y + dy
                path.append((x, y))
        for p in path:
            if produced == count:
                return
            yield p
            produced += 1


def grid_shift(k: int, direction: str) -> int:
    """Cell number reached from cell k by one step of the lamplighter."""
    try:
        dx, dy = DIRECTIONS[direction]
    except KeyError:
        raise StructureError(f"grid directions are x, x-1, y and y-1, not {direction!r}") from None
    x, y = spiral(k)
    return spiral_inv((x + dx, y + dy))


def _require_grid(g: WreathElement) -> None:
    if g.base != BaseKind.GRID or g.lamp_group != "Z2":
        raise StructureError(f"expected an element of Z2 wr Z^2, got {g.lamp_group} wr {g.base.value}")


def grid_encode(g: WreathElement) -> str:
    """One symbol per spiral cell up to the furthest lit lamp or the lamplighter."""
    _require_grid(g)
    lit = {spiral_inv(p) for p in g.support}
    here = spiral_inv(g.pos)
    length = max(lit | {here})
    out = []
    for k in range(1, length + 1):
        bit = k in lit
        if k == here:
            out.append("c" if bit else "C")
        else:
            out.append("1" if bit else "0")
    return "".join(out)


def grid_decode(w: str) -> WreathElement:
    """Read a spiral word back into an element.

    Raises:
        WordParseError: Unknown symbol, missing or repeated C-symbol, or a
            trailing 0
    """
    if not w:
        raise WordParseError(w, 0, "empty word")
    for i, c in enumerate(w):
        if c not in GRID_ALPHABET.codes:
            raise WordParseError(w, i, f"unknown symbol {c!r}")
    marks = [i for i, c in enumerate(w) if c in "Cc"]
    if not marks:
        raise WordParseError(w, len(w), "no C-symbol")
    if len(marks) > 1:
        raise WordParseError(w, marks[1], "second C-symbol")
    if w[-1] == "0":
        raise WordParseError(w, len(w) - 1, "trailing 0")
    lamps = {spiral(i + 1): 1 for i, c in enumerate(w) if c in "1c"}
    return make_element(BaseKind.GRID, "Z2", lamps, spiral(marks[0] + 1))


def grid_is_canonical(w: str) -> bool:
    try:
        grid_decode(w)
    except WordParseError:
        return False
    return True


_LIGHT = {"0": "C", "1": "c"}
_DARK = {"C": "0", "c": "1"}


def grid_language_fsa() -> Fsa:
    """{0,1}* {C,c} ({0,1}* 1)?  with the C-symbol possibly last."""
    transitions = {
        ("q0", "0"): ["q0"], ("q0", "1"): ["q0"],
        ("q0", "C"): ["q1"], ("q0", "c"): ["q1"],
        ("q1", "1"): ["q1"], ("q1", "0"): ["q1z"],
        ("q1z", "0"): ["q1z"], ("q1z", "1"): ["q1"],
    }
    return Fsa(GRID_ALPHABET.codes, ["q0", "q1", "q1z"], "q0", ["q1"], transitions, name="grid:L")


def grid_h_fsa() -> SyncFsa:
    """Flip the lamp under the C-symbol; both words have the same length."""
    transitions = {
        ("q0", ("0", "0")): ["q0"], ("q0", ("1", "1")): ["q0"],
        ("q0", ("C", "c")): ["q1"], ("q0", ("c", "C")): ["q1"],
        ("q1", ("1", "1")): ["q1"], ("q1", ("0", "0")): ["q1z"],
        ("q1z", ("0", "0")): ["q1z"], ("q1z", ("1", "1")): ["q1"],
    }
    return SyncFsa(GRID_ALPHABET.pairs(), ["q0", "q1", "q1z"], "q0", ["q1"], transitions, name="grid:h")


# Stack automata for x and y
#
# Phase one reads pairs without a C-symbol while the pointer bounces through
# a stack B I ... I T.  Before the first letter of block n (positions
# (n-1)^2 + 1 .. n^2) the stack grows to height n; the pointer then walks
# down one cell per letter until it reaches B (position n of the block) and
# back up until it reaches T (the last position).  The block parity and the
# position class at the first C-symbol pick the offset to the other tape's
# C-symbol: +1, or a count measured by popping the stack.

STACK_ALPHABET = ("B", "I", "T")

FIRST, DOWN, BOTTOM, UP, LAST, ONE = "first", "down", "bottom", "up", "last", "one"

# Where the pointer may be when a stack-free state is active.
_ANY_POINTER = [(None, True)] + [(s, top) for s in STACK_ALPHABET for top in (True, False)]
_AT_TOP = [(s, True) for s in STACK_ALPHABET]


def _bit(symbol: str) -> int:
    return 1 if symbol in ("1", "c") else 0


def _has_c(symbol: str) -> bool:
    return symbol in ("C", "c")


def _advance(symbol: str, zero: bool, ended: bool) -> Optional[Tuple[bool, bool]]:
    """Track (last symbol was 0, tape has ended) for one tape, or None if illegal."""
    if ended:
        return (zero, True) if symbol == PAD else None
    if symbol == PAD:
        return (zero, True)
    return (symbol == "0", False)


# An offset is ("next",) for +1, or ("far", stop, extra): pop one stack
# symbol per four letters until the stack is empty or shows B, read
# ``extra`` more letters, then the other C-symbol follows.
NEXT = ("next",)
FAR_X = ("far", "empty", 0)
FAR_Y_LONG = ("far", "empty", 2)
FAR_Y_SHORT = ("far", "bottom", 2)

# (tape carrying the first C-symbol, block parity, position class) -> offset
X_CASES: Dict[Tuple[int, str, str], Tuple] = {}
Y_CASES: Dict[Tuple[int, str, str], Tuple] = {}


def _cases(table: Dict[Tuple[int, str, str], Tuple], tape: int, parity: str, classes: Iterable[str], offset: Tuple) -> None:
    for c in classes:
        table[(tape, parity, c)] = offset


_cases(X_CASES, 0, ONE, [ONE], NEXT)
_cases(X_CASES, 0, "odd", [BOTTOM, UP, LAST], NEXT)
_cases(X_CASES, 0, "even", [FIRST, DOWN, BOTTOM], FAR_X)
_cases(X_CASES, 1, ONE, [ONE], FAR_X)
_cases(X_CASES, 1, "odd", [FIRST, DOWN, BOTTOM], FAR_X)
_cases(X_CASES, 1, "even", [BOTTOM, UP, LAST], NEXT)

_cases(Y_CASES, 0, "even", [FIRST, DOWN], NEXT)
_cases(Y_CASES, 0, "even", [BOTTOM, UP, LAST], FAR_Y_LONG)
_cases(Y_CASES, 0, ONE, [ONE], FAR_Y_SHORT)
_cases(Y_CASES, 0, "odd", [FIRST], FAR_Y_SHORT)
_cases(Y_CASES, 1, "odd", [FIRST, DOWN], NEXT)
_cases(Y_CASES, 1, "odd", [BOTTOM, UP, LAST], FAR_Y_LONG)
_cases(Y_CASES, 1, ONE, [ONE], FAR_Y_LONG)
_cases(Y_CASES, 1, "even", [FIRST], FAR_Y_SHORT)


class _SpiralMachineBuilder:
    """Tabulates the stack automaton for one direction from its case table.

    States are tuples whose first entry names the phase; only states reachable
    from ``("raise", None)`` are generated.
    """

    def __init__(self, cases: Dict[Tuple[int, str, str], Tuple], name: str):
        self.cases = cases
        self.name = name
        self.pairs = GRID_ALPHABET.pairs()
        self.transitions: Dict[Tuple, set] = {}
        self.states: List[Tuple] = []
        self._pending: List[Tuple] = []

    def _note(self, state: Tuple) -> None:
        if state not in self.states:
            self.states.append(state)
            self._pending.append(state)

    def silent(self, state, pointers, target, action) -> None:
        for under, at_top in pointers:
            self.transitions.setdefault((state, None, under, at_top), set()).add((target, action))
        self._note(target)

    def read(self, state, pointers, pair, target) -> None:
        for under, at_top in pointers:
            self.transitions.setdefault((state, pair, under, at_top), set()).add((target, ("stay",)))
        self._note(target)

    def build(self) -> StackAutomaton:
        self._note(("raise", None))
        while self._pending:
            state = self._pending.pop()
            getattr(self, "_expand_" + state[0])(state)
        accepting = [s for s in self.states if s[0] == "tail" and not s[1] and not s[2]]
        logger.debug("%s: %d states", self.name, len(self.states))
        return StackAutomaton(
            self.pairs, STACK_ALPHABET, self.states, ("raise", None), accepting,
            self.transitions, name=self.name,
        )

    # phase one

    def _expand_raise(self, state) -> None:
        previous = state[1]
        if previous is None:
            self.silent(state, [(None, True)], ("read_first", ONE), ("push", "B"))
        elif previous == ONE:
            self.silent(state, [("B", True)], ("read_first", "even"), ("push", "T"))
        else:
            parity = "odd" if previous == "even" else "even"
            self.silent(state, [("T", True)], ("raise2", parity), ("pop",))

    def _expand_raise2(self, state) -> None:
        self.silent(state, [("B", True), ("I", True)], ("raise3", state[1]), ("push", "I"))

    def _expand_raise3(self, state) -> None:
        self.silent(state, [("I", True)], ("read_first", state[1]), ("push", "T"))

    def _expand_read_first(self, state) -> None:
        parity = state[1]
        if parity == ONE:
            self._phase_one_letters(state, [("B", True)], ONE, ("raise", ONE))
        else:
            self._phase_one_letters(state, [("T", True)], FIRST, ("go_down", parity))

    def _expand_go_down(self, state) -> None:
        self.silent(state, [("T", True), ("I", False)], ("read_down", state[1]), ("down",))

    def _expand_read_down(self, state) -> None:
        parity = state[1]
        self._phase_one_letters(state, [("I", False)], DOWN, ("go_down", parity))
        self._phase_one_letters(state, [("B", False)], BOTTOM, ("go_up", parity))

    def _expand_go_up(self, state) -> None:
        self.silent(state, [("B", False), ("I", False)], ("read_up", state[1]), ("up",))

    def _expand_read_up(self, state) -> None:
        parity = state[1]
        self._phase_one_letters(state, [("I", False)], UP, ("go_up", parity))
        self._phase_one_letters(state, [("T", True)], LAST, ("raise", parity))

    def _phase_one_letters(self, state, pointers, position: str, after) -> None:
        parity = ONE if position == ONE else state[1]
        for pair in self.pairs:
            u, v = pair
            if u in "01" and u == v:
                self.read(state, pointers, pair, after)
                continue
            if PAD in pair or _bit(u) != _bit(v) or _has_c(u) == _has_c(v):
                continue
            tape = 0 if _has_c(u) else 1
            offset = self.cases.get((tape, parity, position))
            if offset is None:
                continue
            if offset == NEXT:
                self.read(state, pointers, pair, ("hit", tape, False, False))
            else:
                _, stop, extra = offset
                self.read(state, pointers, pair, ("climb", tape, stop, extra, False, False))

    # measuring the jump

    def _expand_climb(self, state) -> None:
        _, tape, stop, extra, zero, ended = state
        self.silent(state, [(s, False) for s in STACK_ALPHABET], state, ("up",))
        self.silent(state, _AT_TOP, ("group", tape, stop, extra, zero, ended), ("stay",))

    def _expand_group(self, state) -> None:
        _, tape, stop, extra, zero, ended = state
        done = ("extra", tape, extra, zero, ended)
        more = ("count", tape, stop, extra, zero, ended, 0)
        if stop == "empty":
            self.silent(state, [(None, True)], done, ("stay",))
            self.silent(state, _AT_TOP, more, ("stay",))
        else:
            self.silent(state, [("B", True)], done, ("stay",))
            self.silent(state, [("I", True), ("T", True)], more, ("stay",))

    def _expand_count(self, state) -> None:
        _, tape, stop, extra, zero, ended, k = state
        for pair, (z, e) in self._first_tape_letters(tape, zero, ended):
            if k == 3:
                self.read(state, _AT_TOP, pair, ("pop", tape, stop, extra, z, e))
            else:
                self.read(state, _AT_TOP, pair, ("count", tape, stop, extra, z, e, k + 1))

    def _expand_pop(self, state) -> None:
        _, tape, stop, extra, zero, ended = state
        self.silent(state, _AT_TOP, ("group", tape, stop, extra, zero, ended), ("pop",))

    def _expand_extra(self, state) -> None:
        _, tape, k, zero, ended = state
        if k == 0:
            self.silent(state, _ANY_POINTER, ("hit", tape, zero, ended), ("stay",))
            return
        for pair, (z, e) in self._first_tape_letters(tape, zero, ended):
            self.read(state, _ANY_POINTER, pair, ("extra", tape, k - 1, z, e))

    def _first_tape_letters(self, tape: int, zero: bool, ended: bool) -> Iterator[Tuple[Tuple[str, str], Tuple[bool, bool]]]:
        """Pairs without a C-symbol while only the first tape has shown its C."""
        for pair in self.pairs:
            first, other = pair[tape], pair[1 - tape]
            if other not in ("0", "1") or _has_c(first) or _bit(first) != _bit(other):
                continue
            flags = _advance(first, zero, ended)
            if flags is not None:
                yield pair, flags

    # after the second C-symbol

    def _expand_hit(self, state) -> None:
        _, tape, zero, ended = state
        for pair in self.pairs:
            first, other = pair[tape], pair[1 - tape]
            if not _has_c(other) or _has_c(first) or _bit(first) != _bit(other):
                continue
            flags = _advance(first, zero, ended)
            if flags is None:
                continue
            if tape == 0:
                target = ("tail", flags[0], False, flags[1], False)
            else:
                target = ("tail", False, flags[0], False, flags[1])
            self.read(state, _ANY_POINTER, pair, target)

    def _expand_tail(self, state) -> None:
        _, uz, vz, ue, ve = state
        for pair in self.pairs:
            u, v = pair
            if _has_c(u) or _has_c(v) or _bit(u) != _bit(v):
                continue
            left, right = _advance(u, uz, ue), _advance(v, vz, ve)
            if left is None or right is None:
                continue
            self.read(state, _ANY_POINTER, pair, ("tail", left[0], right[0], left[1], right[1]))


_MACHINES: Dict[str, object] = {}


def grid_x_sa() -> StackAutomaton:
    if "x" not in _MACHINES:
        _MACHINES["x"] = _SpiralMachineBuilder(X_CASES, "grid:x").build()
    return _MACHINES["x"]


def grid_y_sa() -> StackAutomaton:
    if "y" not in _MACHINES:
        _MACHINES["y"] = _SpiralMachineBuilder(Y_CASES, "grid:y").build()
    return _MACHINES["y"]


def grid_mult_machine(gen: str):
    """Multiplier for h, x, x-1, y or y-1; x-1 and y-1 are transposes."""
    if gen == "h":
        if "h" not in _MACHINES:
            _MACHINES["h"] = grid_h_fsa()
        return _MACHINES["h"]
    if gen == "x":
        return grid_x_sa()
    if gen == "y":
        return grid_y_sa()
    if gen in ("x-1", "y-1"):
        if gen not in _MACHINES:
            forward = grid_x_sa() if gen == "x-1" else grid_y_sa()
            _MACHINES[gen] = forward.transpose(f"grid:{gen}")
        return _MACHINES[gen]
    raise StructureError(f"Z2 wr Z^2 generators are h, x, x-1, y and y-1, not {gen!r}")


def phase_one_heights(m: int, gen: str = "x") -> List[int]:
    """Stack heights after each of m letters read before any C-symbol."""
    machine = grid_x_sa() if gen == "x" else grid_y_sa()
    return sa_trace_heights(machine, [("0", "0")] * m)


def single_lamp_length(p: Point) -> int:
    """Word length of the element with one lit lamp at p and the lamplighter at the origin."""
    return 2 * (abs(p[0]) + abs(p[1])) + 1


def witness_element(r: int) -> WreathElement:
    """Lamp lit at (0, -r), lamplighter at the origin."""
    return make_element(BaseKind.GRID, "Z2", {(0, -r): 1}, (0, 0))


def witness_family(radii: Iterable[int]) -> List[Tuple[int, int, int]]:
    """(r, |w|, |g|) for the single-lamp witnesses; |w| / |g| grows with r."""
    out = []
    for r in radii:
        g = witness_element(r)
        out.append((r, len(grid_encode(g)), single_lamp_length((0, -r))))
    return out


WITNESS_RADII = range(1, 9)


def grid_bounds_check(ball: DistanceMap) -> BoundsReport:
    """|g| <= 2|w| - 1 on the ball; no linear lower bound holds.

    The witness family is appended to the report and its ratios |w| / |g|
    must increase strictly, otherwise the family shows up as a violation.
    """
    report = check_bounds("grid", ball, grid_encode, None, None, Fraction(2), Fraction(-1))
    family = witness_family(WITNESS_RADII)
    ratios = [Fraction(size, d) for _, size, d in family]
    if any(b <= a for a, b in zip(ratios, ratios[1:])):
        report.violations.append(("witness family", family[-1][1], family[-1][2]))
    report.family = family
    return report


def c_relocations(u: str) -> Iterator[str]:
    """Words that differ from u only in where the C-symbol sits."""
    current = next((i for i, c in enumerate(u) if c in _DARK), None)
    for i, c in enumerate(u):
        if i == current or c not in _LIGHT:
            continue
        moved = list(u)
        moved[i] = _LIGHT[c]
        if current is not None:
            moved[current] = _DARK[u[current]]
        yield "".join(moved)


class GridRepresentation:
    """Audit handle for Z2 wr Z^2."""

    name = "grid"

    def __init__(self) -> None:
        self.spec = grid_spec()

    def encode(self, g: WreathElement) -> str:
        return grid_encode(g)

    def decode(self, w: str) -> WreathElement:
        return grid_decode(w)

    def near_misses(self, u: str) -> Iterable[str]:
        return c_relocations(u)
