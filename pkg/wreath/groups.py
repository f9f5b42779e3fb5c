"""Exact arithmetic in the wreath products used by the representations.

Elements are immutable ``WreathElement`` values over one of three base groups
(Z, F2 and Z^2).  Lamp values live in Z2 or in a registered subsidiary group G;
the lamp support is kept sparse and canonical so that equality is structural.
"""

import json
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import regex

from .constants import BALL_CAP
from .errors import BallTooLargeError, LiteralParseError, StructureError

logger = logging.getLogger(__name__)


class BaseKind(str, Enum):
    Z = "Z"
    F2 = "F2"
    GRID = "Z2grid"


class LampKind(str, Enum):
    Z2 = "Z2"
    GENERIC = "GenericG"


# Free group words

_LETTER_NAMES = {
    "a": "a", "a-1": "A", "a⁻¹": "A", "A": "A",
    "b": "b", "b-1": "B", "b⁻¹": "B", "B": "B",
}
_INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}


@dataclass(frozen=True, order=False)
class FreeWord:
    """Freely reduced word over a, a^-1, b, b^-1.

    Letters are stored one character each; an upper-case letter is the
    inverse of its lower-case generator.
    """

    letters: str = ""

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return free_reduce(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord("".join(_INVERSE_LETTER[c] for c in reversed(self.letters)))

    def sort_key(self) -> Tuple[int, str]:
        return (len(self.letters), self.letters)

    def __str__(self) -> str:
        return format_free_word(self)


def free_reduce(letters: Iterable[str]) -> FreeWord:
    """Return the freely reduced form of a generator sequence.

    Args:
        letters: Letters as single characters (``A`` for a^-1) or as names
            such as ``a-1``

    Returns:
        The reduced FreeWord; the empty input gives the identity
    """
    out: List[str] = []
    for item in letters:
        letter = _LETTER_NAMES.get(item)
        if letter is None:
            raise StructureError(f"not a free generator: {item!r}")
        if out and out[-1] == _INVERSE_LETTER[letter]:
            out.pop()
        else:
            out.append(letter)
    return FreeWord("".join(out))


def format_free_word(w: FreeWord) -> str:
    if not w.letters:
        return "e"
    return "".join(c if c.islower() else c.lower() + "-1" for c in w.letters)


def free_branch(w: FreeWord) -> str:
    """Classify a free word by its first letter: ``a``, ``b`` or ``e``."""
    if not w.letters:
        return "e"
    return w.letters[0].lower()


# Base group arithmetic

Point = Any


@dataclass(frozen=True)
class BaseOps:
    identity: Point
    mul: Callable[[Point, Point], Point]
    inv: Callable[[Point], Point]
    key: Callable[[Point], Any]


BASE_OPS: Dict[BaseKind, BaseOps] = {
    BaseKind.Z: BaseOps(0, lambda p, q: p + q, lambda p: -p, lambda p: p),
    BaseKind.GRID: BaseOps(
        (0, 0),
        lambda p, q: (p[0] + q[0], p[1] + q[1]),
        lambda p: (-p[0], -p[1]),
        lambda p: p,
    ),
    BaseKind.F2: BaseOps(FreeWord(), lambda p, q: p * q, lambda p: p.inverse(), lambda p: p.sort_key()),
}


# Lamp group arithmetic

@dataclass(frozen=True)
class LampOps:
    name: str
    kind: LampKind
    identity: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]


LAMP_GROUPS: Dict[str, LampOps] = {}


def register_lamp_group(ops: LampOps) -> LampOps:
    """Register the arithmetic of a lamp group under its name."""
    LAMP_GROUPS[ops.name] = ops
    return ops


register_lamp_group(LampOps("Z2", LampKind.Z2, 0, lambda x, y: (x + y) % 2, lambda x: x))
register_lamp_group(LampOps("Z", LampKind.GENERIC, 0, lambda x, y: x + y, lambda x: -x))


def lamp_ops(name: str) -> LampOps:
    try:
        return LAMP_GROUPS[name]
    except KeyError:
        raise StructureError(f"unknown lamp group {name!r}") from None


@dataclass(frozen=True)
class WreathElement:
    """An element (f, b) of A wr B with f stored as sorted (point, value) pairs."""

    base: BaseKind
    lamp_group: str
    lamps: Tuple[Tuple[Point, Any], ...]
    pos: Point

    @property
    def lamp_map(self) -> Dict[Point, Any]:
        return dict(self.lamps)

    @property
    def support(self) -> List[Point]:
        return [p for p, _ in self.lamps]

    def is_identity(self) -> bool:
        return not self.lamps and self.pos == BASE_OPS[self.base].identity

    def __str__(self) -> str:
        return format_element(self)


def make_element(base: BaseKind, lamp_group: str, lamps: Mapping[Point, Any], pos: Point) -> WreathElement:
    """Build a canonical element, dropping identity lamp values."""
    ops = BASE_OPS[base]
    identity = lamp_ops(lamp_group).identity
    entries = tuple(sorted(((p, v) for p, v in lamps.items() if v != identity), key=lambda item: ops.key(item[0])))
    return WreathElement(base, lamp_group, entries, pos)


def identity_element(base: BaseKind, lamp_group: str = "Z2") -> WreathElement:
    return WreathElement(base, lamp_group, (), BASE_OPS[base].identity)


def _check_same_group(x: WreathElement, y: WreathElement) -> None:
    if x.base != y.base or x.lamp_group != y.lamp_group:
        raise StructureError(
            f"cannot combine {x.lamp_group} wr {x.base.value} with {y.lamp_group} wr {y.base.value}"
        )


def wreath_mul(x: WreathElement, y: WreathElement) -> WreathElement:
    """Multiply (f, b)(f', b') = (f f'^(b^-1), b b') where f^b(p) = f(b p)."""
    _check_same_group(x, y)
    base = BASE_OPS[x.base]
    lamp = lamp_ops(x.lamp_group)
    result = dict(x.lamps)
    for point, value in y.lamps:
        target = base.mul(x.pos, point)
        result[target] = lamp.mul(result.get(target, lamp.identity), value)
    return make_element(x.base, x.lamp_group, result, base.mul(x.pos, y.pos))


def wreath_inv(x: WreathElement) -> WreathElement:
    base = BASE_OPS[x.base]
    lamp = lamp_ops(x.lamp_group)
    back = base.inv(x.pos)
    lamps = {base.mul(back, point): lamp.inv(value) for point, value in x.lamps}
    return make_element(x.base, x.lamp_group, lamps, back)


def embed_lamplighter(g: WreathElement) -> WreathElement:
    """Map an element of Z2 wr Z into the subgroup <a, h> of Z2 wr F2."""
    if g.base != BaseKind.Z or g.lamp_group != "Z2":
        raise StructureError("only lamplighter elements embed into Z2 wr F2")

    def power(k: int) -> FreeWord:
        return FreeWord("a" * k if k >= 0 else "A" * -k)

    return make_element(BaseKind.F2, "Z2", {power(p): v for p, v in g.lamps}, power(g.pos))


@dataclass
class GroupSpec:
    """A wreath product together with a named generating set.

    Args:
        name: Selector name, e.g. "ll" or "grid"
        base: Base group
        lamp_group: Registered lamp group name
        generators: Ordered mapping from generator name to element
    """

    name: str
    base: BaseKind
    lamp_group: str
    generators: Dict[str, WreathElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen = set()
        for gen_name, element in self.generators.items():
            if element.base != self.base or element.lamp_group != self.lamp_group:
                raise StructureError(f"generator {gen_name} does not belong to {self.name}")
            if element in seen:
                raise StructureError(f"generator {gen_name} duplicates another generator")
            seen.add(element)

    @property
    def lamp(self) -> LampKind:
        return lamp_ops(self.lamp_group).kind

    @property
    def identity(self) -> WreathElement:
        return identity_element(self.base, self.lamp_group)

    def generator(self, name: str) -> WreathElement:
        try:
            return self.generators[name]
        except KeyError:
            raise StructureError(f"{self.name} has no generator {name!r}") from None

    def steps(self) -> List[Tuple[str, WreathElement]]:
        """Generators closed under inverses, in a fixed order."""
        out = list(self.generators.items())
        present = set(self.generators.values())
        for gen_name, element in list(self.generators.items()):
            back = wreath_inv(element)
            if back not in present:
                out.append((gen_name + "-1", back))
                present.add(back)
        return out

    def evaluate(self, names: Sequence[str]) -> WreathElement:
        """Multiply out a sequence of generator names."""
        table = dict(self.steps())
        g = self.identity
        for gen_name in names:
            if gen_name not in table:
                raise StructureError(f"{self.name} has no generator {gen_name!r}")
            g = wreath_mul(g, table[gen_name])
        return g


def lamplighter_spec() -> GroupSpec:
    return wreath_over_z("ll", "Z2", {"h": 1})


def wreath_over_z(name: str, lamp_group: str, lamp_generators: Mapping[str, Any]) -> GroupSpec:
    """G wr Z generated by a, a^-1 and the lamp generators placed at 0."""
    gens = {
        "a": make_element(BaseKind.Z, lamp_group, {}, 1),
        "a-1": make_element(BaseKind.Z, lamp_group, {}, -1),
    }
    ops = lamp_ops(lamp_group)
    for gen_name, value in lamp_generators.items():
        gens[gen_name] = make_element(BaseKind.Z, lamp_group, {0: value}, 0)
        back = ops.inv(value)
        if back != value:
            gens[gen_name + "-1"] = make_element(BaseKind.Z, lamp_group, {0: back}, 0)
    return GroupSpec(name, BaseKind.Z, lamp_group, gens)


def f2_spec() -> GroupSpec:
    def at(letters: str) -> WreathElement:
        return make_element(BaseKind.F2, "Z2", {}, FreeWord(letters))

    gens = {"a": at("a"), "a-1": at("A"), "b": at("b"), "b-1": at("B")}
    gens["h"] = make_element(BaseKind.F2, "Z2", {FreeWord(): 1}, FreeWord())
    return GroupSpec("f2", BaseKind.F2, "Z2", gens)


def grid_spec() -> GroupSpec:
    def at(x: int, y: int) -> WreathElement:
        return make_element(BaseKind.GRID, "Z2", {}, (x, y))

    gens = {"x": at(1, 0), "x-1": at(-1, 0), "y": at(0, 1), "y-1": at(0, -1)}
    gens["h"] = make_element(BaseKind.GRID, "Z2", {(0, 0): 1}, (0, 0))
    return GroupSpec("grid", BaseKind.GRID, "Z2", gens)


# Element literals

_INT = regex.compile(r"[+-]?\d+")
_GRID_POINT = regex.compile(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_FWORD = regex.compile(r"e|(?:[ab](?:-1)?)+")
_FWORD_LETTER = regex.compile(r"([ab])(-1)?")


def _expect(text: str, pos: int, literal: str) -> int:
    if not text.startswith(literal, pos):
        raise LiteralParseError(text, pos, f"expected {literal!r}")
    return pos + len(literal)


def _parse_point(text: str, pos: int, base: BaseKind) -> Tuple[Point, int]:
    if base == BaseKind.Z:
        m = _INT.match(text, pos=pos)
        if not m:
            raise LiteralParseError(text, pos, "expected an integer")
        return int(m.group()), m.end()
    if base == BaseKind.GRID:
        m = _GRID_POINT.match(text, pos=pos)
        if not m:
            raise LiteralParseError(text, pos, "expected a point (x,y)")
        return (int(m.group(1)), int(m.group(2))), m.end()
    m = _FWORD.match(text, pos=pos)
    if not m:
        raise LiteralParseError(text, pos, "expected a free word")
    if m.group() == "e":
        return FreeWord(), m.end()
    letters = [g + (s or "") for g, s in _FWORD_LETTER.findall(m.group())]
    return free_reduce(letters), m.end()


def parse_element(text: str, spec: GroupSpec) -> WreathElement:
    """Parse an element literal such as ``pos=1;lamps=-1,1``.

    Args:
        text: The literal
        spec: Group the element belongs to

    Returns:
        The canonical element

    Raises:
        LiteralParseError: With the position of the first offending character
    """
    text = text.strip()
    valued = spec.lamp != LampKind.Z2
    pos = _expect(text, 0, "pos=")
    where, pos = _parse_point(text, pos, spec.base)
    pos = _expect(text, pos, ";lamps=")
    lamps: Dict[Point, Any] = {}
    while pos < len(text):
        start = pos
        point, pos = _parse_point(text, pos, spec.base)
        value: Any = 1
        if valued:
            pos = _expect(text, pos, ":")
            m = _INT.match(text, pos=pos)
            if not m:
                raise LiteralParseError(text, pos, "expected a lamp value")
            value, pos = int(m.group()), m.end()
        if point in lamps:
            raise LiteralParseError(text, start, "duplicate lamp")
        lamps[point] = value
        if pos < len(text):
            pos = _expect(text, pos, ",")
            if pos == len(text):
                raise LiteralParseError(text, pos, "dangling comma")
    return make_element(spec.base, spec.lamp_group, lamps, where)


def _format_point(p: Point, base: BaseKind) -> str:
    if base == BaseKind.GRID:
        return f"({p[0]},{p[1]})"
    if base == BaseKind.F2:
        return format_free_word(p)
    return str(p)


def format_element(g: WreathElement) -> str:
    valued = lamp_ops(g.lamp_group).kind != LampKind.Z2
    parts = []
    for point, value in g.lamps:
        text = _format_point(point, g.base)
        parts.append(f"{text}:{value}" if valued else text)
    return f"pos={_format_point(g.pos, g.base)};lamps={','.join(parts)}"


# Word-length oracle

@dataclass
class DistanceMap:
    """Exact word lengths of every element of a ball around the identity."""

    group: str
    radius: int
    entries: Dict[WreathElement, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, g: WreathElement) -> bool:
        return g in self.entries

    def distance(self, g: WreathElement) -> int:
        return self.entries[g]

    def elements(self) -> List[WreathElement]:
        """Ball elements ordered by distance, then by literal."""
        return sorted(self.entries, key=lambda g: (self.entries[g], format_element(g)))

    def within(self, radius: int) -> Iterator[WreathElement]:
        return (g for g in self.elements() if self.entries[g] <= radius)

    def save_to_disk(self, filepath: str) -> None:
        """Save the ball as JSON.

        Args:
            filepath: Target file; parent directories are created
        """
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        document = {
            "group": self.group,
            "radius": self.radius,
            "entries": [[format_element(g), self.entries[g]] for g in self.elements()],
        }
        with open(filepath, "w") as f:
            json.dump(document, f, indent=2)

    @classmethod
    def load_from_disk(cls, filepath: str, spec: GroupSpec) -> Optional["DistanceMap"]:
        """Load a ball saved by ``save_to_disk``.

        Returns:
            The ball, or None if the file is missing or belongs to another group
        """
        if not os.path.exists(filepath):
            return None
        with open(filepath, "r") as f:
            document = json.load(f)
        if document.get("group") != spec.name:
            logger.warning("ball file %s belongs to %s, not %s", filepath, document.get("group"), spec.name)
            return None
        entries = {parse_element(text, spec): int(d) for text, d in document["entries"]}
        return cls(spec.name, int(document["radius"]), entries)


def bfs_ball(spec: GroupSpec, radius: int, cap: int = BALL_CAP) -> DistanceMap:
    """Breadth-first search of the Cayley graph up to ``radius``.

    Args:
        spec: Group and generating set; inverses are added automatically
        radius: Ball radius
        cap: Maximum number of visited elements

    Raises:
        BallTooLargeError: When the cap is exceeded
    """
    steps = [element for _, element in spec.steps()]
    start = spec.identity
    entries = {start: 0}
    frontier = deque([start])
    for depth in range(radius):
        next_frontier: deque = deque()
        while frontier:
            g = frontier.popleft()
            for s in steps:
                n = wreath_mul(g, s)
                if n not in entries:
                    entries[n] = depth + 1
                    next_frontier.append(n)
                    if len(entries) > cap:
                        raise BallTooLargeError(cap, len(entries), depth)
        frontier = next_frontier
        logger.debug("%s ball radius %d: %d elements", spec.name, depth + 1, len(entries))
    logger.info("%s ball of radius %d has %d elements", spec.name, radius, len(entries))
    return DistanceMap(spec.name, radius, entries)


def word_length(spec: GroupSpec, g: WreathElement, cap: int = BALL_CAP) -> int:
    """Distance of g from the identity, searching outward until it is met.

    Raises:
        BallTooLargeError: When the cap is exceeded before g is reached
    """
    if g.base != spec.base or g.lamp_group != spec.lamp_group:
        raise StructureError(f"{format_element(g)} is not an element of {spec.name}")
    steps = [element for _, element in spec.steps()]
    seen = {spec.identity}
    frontier = [spec.identity]
    depth = 0
    while g not in seen:
        depth += 1
        nxt = []
        for x in frontier:
            for s in steps:
                y = wreath_mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise BallTooLargeError(cap, len(seen), depth - 1)
        frontier = nxt
    return depth
