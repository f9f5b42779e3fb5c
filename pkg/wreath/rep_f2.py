"""Bracketed representation of Z2 wr F2.

Words are read as line trees (see ``bracket_tree``): the root is the
horizontal line through the origin, parentheses hold vertical lines and
square brackets horizontal ones.  The language needs a stack, so the
language and multiplier machines are pushdown automata.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator

from .automata import Pda, SymbolTable
from .bracket_logic import SYMBOLS, MoveLogic, has_light, language_pda, lit, unlit
from .bracket_tree import f2_tree, linearize, parse_tree, tree_element
from .engine import Compiler
from .errors import StructureError, WordParseError
from .groups import BaseKind, DistanceMap, WreathElement, f2_spec, wreath_mul
from .rep_z import BoundsReport, check_bounds
from .utils import split_generator

logger = logging.getLogger(__name__)

F2_ALPHABET = SymbolTable(
    "f2",
    (
        ("0", "0"), ("1", "1"),
        ("D0", "D"), ("D1", "d"), ("E0", "E"), ("E1", "e"),
        ("(", "("), (")", ")"), ("[", "["), ("]", "]"),
        ("A0", "A"), ("A1", "a"), ("B0", "B"), ("B1", "b"), ("C0", "C"), ("C1", "c"),
        ("D0^A", "P"), ("D1^A", "p"), ("D0^B", "Q"), ("D1^B", "q"),
        ("D0^C", "R"), ("D1^C", "r"), ("E0^C", "S"), ("E1^C", "s"),
    ),
)
IDENTITY_WORD = "A"

# Two elements drawn as line trees, with their words.
REFERENCE_WORDS = ("11(1[1E1]P[E(cd)])([1E]D[1e])1", "(D1)a([1E]D[1s])1")


def _require_f2(g: WreathElement) -> None:
    if g.base != BaseKind.F2 or g.lamp_group != "Z2":
        raise StructureError(f"expected an element of Z2 wr F2, got {g.lamp_group} wr {g.base.value}")


def f2_encode(g: WreathElement) -> str:
    _require_f2(g)
    if g.is_identity():
        return IDENTITY_WORD
    return linearize(f2_tree(g))


def f2_decode(w: str) -> WreathElement:
    """Parse a bracketed word back into an element.

    Raises:
        WordParseError: At the first offending position
    """
    g = tree_element(parse_tree(w))
    again = f2_encode(g)
    if again != w:
        at = next((i for i, (x, y) in enumerate(zip(w, again)) if x != y), min(len(w), len(again)))
        raise WordParseError(w, at, "not the canonical word of its element")
    return g


def f2_is_canonical(w: str) -> bool:
    try:
        f2_decode(w)
    except WordParseError:
        return False
    return True


_MACHINES: Dict[str, Pda] = {}


def f2_language_pda() -> Pda:
    """Deterministic pushdown automaton for the representative language."""
    if "L" not in _MACHINES:
        _MACHINES["L"] = language_pda(flat=False, name="f2:L")
    return _MACHINES["L"]


def f2_mult_pda(gen: str) -> Pda:
    """Multiplier automaton for h, a, a-1, b or b-1; inverses are transposes."""
    if gen not in _MACHINES:
        base, inverse = split_generator(gen)
        if base not in ("h", "a", "b") or (inverse and base == "h"):
            raise StructureError(f"Z2 wr F2 generators are h, a, a-1, b and b-1, not {gen!r}")
        if inverse:
            _MACHINES[gen] = f2_mult_pda(base).transpose(f"f2:{gen}")
        else:
            _MACHINES[gen] = Compiler(MoveLogic(base, flat=False), F2_ALPHABET.pairs(), f"f2:{gen}").pda()
    return _MACHINES[gen]


def f2_bounds_check(ball: DistanceMap) -> BoundsReport:
    """(1/3)|w| - 1/3 <= |g| <= 3|w| - 2 on every element of the ball."""
    return check_bounds("f2", ball, f2_encode, Fraction(1, 3), Fraction(-1, 3), Fraction(3), Fraction(-2))


def f2_step_property(g: WreathElement) -> bool:
    """Multiplying by h keeps |w|; by a or b it moves |w| by at most 3."""
    spec = f2_spec()
    size = len(f2_encode(g))
    if len(f2_encode(wreath_mul(g, spec.generator("h")))) != size:
        return False
    return all(
        abs(len(f2_encode(wreath_mul(g, spec.generator(s)))) - size) <= 3
        for s in ("a", "a-1", "b", "b-1")
    )


def light_relocations(u: str) -> Iterator[str]:
    """Words that differ from u only in where the lamplighter mark sits."""
    chars = list(u)
    current = next((i for i, c in enumerate(chars) if has_light(c)), None)
    for i, c in enumerate(chars):
        if i == current or c not in SYMBOLS:
            continue
        target = lit(c)
        if target is None:
            continue
        moved = list(chars)
        moved[i] = target
        if current is not None:
            moved[current] = unlit(chars[current]) or chars[current]
        yield "".join(moved)


class F2Representation:
    """Audit handle for Z2 wr F2."""

    name = "f2"

    def __init__(self) -> None:
        self.spec = f2_spec()

    def encode(self, g: WreathElement) -> str:
        return f2_encode(g)

    def decode(self, w: str) -> WreathElement:
        return f2_decode(w)

    def near_misses(self, u: str) -> Iterable[str]:
        return light_relocations(u)
