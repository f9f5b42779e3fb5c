"""Representations of the lamplighter group Z2 wr Z and of G wr Z.

Lamplighter words list the lamps on the window [l, r] that covers the
support, the origin and the lamplighter; A-symbols mark the origin,
C-symbols the lamplighter and B-symbols both.  G wr Z concatenates one
G-representative per cell and tags the first letter of every cell.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from .automata import Fsa, SymbolTable, SyncFsa, crawl, max_padding_run
from .bracket_logic import FLAT_CODES, MoveLogic, language_pda
from .constants import G_BALL_RADIUS, PAD, QUEUE_LIMIT
from .engine import END, Compiler, Step, TapeLogic
from .errors import StructureError, UnknownConstantError, WordParseError
from .groups import (
    BaseKind,
    DistanceMap,
    GroupSpec,
    WreathElement,
    format_element,
    lamp_ops,
    lamplighter_spec,
    make_element,
    wreath_mul,
    wreath_over_z,
)
from .presentations import GPresentation
from .utils import split_generator

logger = logging.getLogger(__name__)

LAMP_ALPHABET = SymbolTable(
    "lamplighter",
    (("0", "0"), ("1", "1"), ("A0", "A"), ("A1", "a"), ("B0", "B"), ("B1", "b"), ("C0", "C"), ("C1", "c")),
)


@dataclass(frozen=True)
class SpanFrame:
    """Extremes m, n of the support (None when empty) and the window [l, r]."""

    m: Optional[int]
    n: Optional[int]
    l: int
    r: int


def span_frame(g: WreathElement) -> SpanFrame:
    support = g.support
    m = min(support) if support else None
    n = max(support) if support else None
    z = g.pos
    return SpanFrame(m, n, min([z, 0] + support), max([z, 0] + support))


def _require_lamplighter(g: WreathElement) -> None:
    if g.base != BaseKind.Z or g.lamp_group != "Z2":
        raise StructureError(f"expected an element of Z2 wr Z, got {g.lamp_group} wr {g.base.value}")


def ll_encode(g: WreathElement) -> str:
    _require_lamplighter(g)
    frame = span_frame(g)
    lamps = g.lamp_map
    z = g.pos
    out = []
    for i in range(frame.l, frame.r + 1):
        bit = lamps.get(i, 0)
        if i == 0:
            out.append(("B" if z == 0 else "A") if bit == 0 else ("b" if z == 0 else "a"))
        elif i == z:
            out.append("Cc"[bit])
        else:
            out.append("01"[bit])
    return "".join(out)


def ll_decode(w: str) -> WreathElement:
    """Invert ``ll_encode``.

    Raises:
        WordParseError: Naming the first offending index
    """
    if not w:
        raise WordParseError(w, 0, "empty word")
    origin = light = None
    for i, c in enumerate(w):
        if c not in FLAT_CODES:
            raise WordParseError(w, i, "unknown symbol")
        if c in "AaBb":
            if origin is not None:
                raise WordParseError(w, i, "second origin marker")
            origin = i
        if c in "BbCc":
            if light is not None:
                raise WordParseError(w, i, "second lamplighter marker")
            light = i
    if origin is None:
        raise WordParseError(w, len(w), "no origin marker")
    if light is None:
        raise WordParseError(w, len(w), "no lamplighter marker")
    if w[0] == "0":
        raise WordParseError(w, 0, "leading unlit cell")
    if w[-1] == "0":
        raise WordParseError(w, len(w) - 1, "trailing unlit cell")
    lamps = {i - origin: 1 for i, c in enumerate(w) if c in "1abc"}
    return make_element(BaseKind.Z, "Z2", lamps, light - origin)


def ll_word_length(g: WreathElement) -> int:
    """Length of the representative, from the extremes of the support."""
    f = span_frame(g)
    z = g.pos
    if f.m is None:
        return abs(z) + 1
    return max(abs(f.n - f.m), abs(f.n), abs(f.m), abs(f.n - z), abs(f.m - z), abs(z)) + 1


def ll_length(g: WreathElement) -> int:
    """Word length over {a, a^-1, h} in closed form."""
    _require_lamplighter(g)
    f = span_frame(g)
    z = g.pos
    right = max(f.n, 0) if f.n is not None else 0
    left = max(-f.m, 0) if f.m is not None else 0
    return len(g.lamps) + min(2 * left + right + abs(z - right), 2 * right + left + abs(z + left))


def _power(k: int) -> List[str]:
    return ["a"] * k if k >= 0 else ["a-1"] * -k


def _reduce(names: List[str]) -> Tuple[str, ...]:
    out: List[str] = []
    for name in names:
        if out and {out[-1], name} == {"a", "a-1"}:
            out.pop()
        else:
            out.append(name)
    return tuple(out)


def ll_normal_form(g: WreathElement) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """Left-first and right-first normal forms, freely reduced.

    Both visit the lit lamps as conjugates a^k h a^-k: the left-first form
    runs over the non-negative lamps first, the right-first form over the
    negative ones first.
    """
    _require_lamplighter(g)
    right = [p for p in g.support if p >= 0]
    left = sorted(-p for p in g.support if p < 0)

    def conjugates(points: List[int]) -> List[str]:
        out: List[str] = []
        for k in points:
            out += _power(k) + ["h"] + _power(-k)
        return out

    tail = _power(g.pos)
    first = conjugates(right) + conjugates([-j for j in left])
    second = conjugates([-j for j in left]) + conjugates(right)
    return _reduce(first + tail), _reduce(second + tail)


def ll_step_property(g: WreathElement) -> bool:
    """|w(gh)| = |w| and |w(ga^+-1)| differs from |w| by at most one."""
    spec = lamplighter_spec()
    size = len(ll_encode(g))
    if len(ll_encode(wreath_mul(g, spec.generator("h")))) != size:
        return False
    return all(abs(len(ll_encode(wreath_mul(g, spec.generator(s)))) - size) <= 1 for s in ("a", "a-1"))


def ll_language_fsa() -> Fsa:
    pda = language_pda(flat=True, name="ll:L")

    def follow(state, code):
        return [target for target, _ in pda.moves(state, code, None)]

    order, table = crawl(pda.initial, pda.alphabet, follow)
    number = {s: i for i, s in enumerate(order)}
    accepting = [number[s] for s in order if pda.is_accepting(s)]
    transitions = {(number[s], c): [number[t] for t in targets] for (s, c), targets in table.items()}
    return Fsa(pda.alphabet, range(len(order)), 0, accepting, transitions, name="ll:L")


_LL_CACHE: Dict[str, SyncFsa] = {}


def ll_mult_fsa(gen: str) -> SyncFsa:
    """Multiplier automaton for a, a-1 or h; a-1 is the transpose of a."""
    if gen not in ("a", "a-1", "h"):
        raise StructureError(f"lamplighter generators are a, a-1 and h, not {gen!r}")
    if gen not in _LL_CACHE:
        if gen == "a-1":
            _LL_CACHE[gen] = ll_mult_fsa("a").transpose("ll:a-1")
        else:
            compiler = Compiler(MoveLogic(gen, flat=True), LAMP_ALPHABET.pairs(), f"ll:{gen}")
            _LL_CACHE[gen] = compiler.fsa()
    return _LL_CACHE[gen]


@dataclass
class BoundsReport:
    """Outcome of checking lambda*|w| + mu <= |g| <= xi*|w| + delta over a ball.

    Violations are (element literal, |w|, |g|) triples; witnesses attain one
    side of the inequality with equality.
    """

    group: str
    lam: Optional[Fraction]
    mu: Optional[Fraction]
    xi: Optional[Fraction]
    delta: Optional[Fraction]
    checked: int = 0
    best_ratio: Optional[Fraction] = None
    violations: List[Tuple[str, int, int]] = field(default_factory=list)
    lower_witnesses: List[Tuple[str, int, int]] = field(default_factory=list)
    upper_witnesses: List[Tuple[str, int, int]] = field(default_factory=list)
    family: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "lambda": self.lam,
            "mu": self.mu,
            "xi": self.xi,
            "delta": self.delta,
            "checked": self.checked,
            "best_ratio": self.best_ratio,
            "passed": self.passed,
            "violations": self.violations,
            "lower_witnesses": self.lower_witnesses,
            "upper_witnesses": self.upper_witnesses,
            "family": self.family,
        }


WITNESS_LIMIT = 10


def check_bounds(
    group: str,
    ball: DistanceMap,
    encode,
    lam: Optional[Fraction],
    mu: Optional[Fraction],
    xi: Optional[Fraction] = None,
    delta: Optional[Fraction] = None,
) -> BoundsReport:
    """Compare |encode(g)| with the ball distance of every element.

    Either side is skipped when its constants are None. With an upper side
    the report keeps the largest observed |g| / (xi*|w| + delta).
    """
    report = BoundsReport(group, lam, mu, xi, delta)
    for g in ball.elements():
        size = len(encode(g))
        d = ball.distance(g)
        entry = (format_element(g), size, d)
        lower = None if lam is None or mu is None else lam * size + mu
        upper = None if xi is None or delta is None else xi * size + delta
        report.checked += 1
        if upper is not None and upper > 0:
            ratio = Fraction(d) / upper
            if report.best_ratio is None or ratio > report.best_ratio:
                report.best_ratio = ratio
        if (lower is not None and d < lower) or (upper is not None and d > upper):
            report.violations.append(entry)
            continue
        if lower is not None and d == lower and len(report.lower_witnesses) < WITNESS_LIMIT:
            report.lower_witnesses.append(entry)
        if upper is not None and d == upper and len(report.upper_witnesses) < WITNESS_LIMIT:
            report.upper_witnesses.append(entry)
    logger.info("%s bounds: %d checked, %d violations", group, report.checked, len(report.violations))
    return report


def ll_bounds_check(ball: DistanceMap) -> BoundsReport:
    """|w| - 1 <= |g| <= 3|w| - 2 on every element of a lamplighter ball."""
    return check_bounds("ll", ball, ll_encode, Fraction(1), Fraction(-1), Fraction(3), Fraction(-2))


class LlRepresentation:
    """Handle used by relation audits."""

    name = "ll"

    def __init__(self) -> None:
        self.spec = lamplighter_spec()

    def encode(self, g: WreathElement) -> str:
        return ll_encode(g)

    def decode(self, w: str) -> WreathElement:
        return ll_decode(w)

    def near_misses(self, u: str) -> Iterable[str]:
        return ()


# G wr Z: each cell is a G-representative whose first letter carries a tag.
# "u" marks an ordinary cell, A/B/C the origin and lamplighter as above.
GZ_ALPHABET = SymbolTable(
    "tagged-bits",
    (
        ("0", "0"), ("1", "1"),
        ("u0", "u"), ("u1", "U"),
        ("A0", "A"), ("A1", "a"),
        ("B0", "B"), ("B1", "b"),
        ("C0", "C"), ("C1", "c"),
    ),
)
TAG_OF: Dict[str, Tuple[str, str]] = {
    code: (label[0], label[1]) for label, code in GZ_ALPHABET.symbols if len(label) == 2
}
TAG_CODE: Dict[Tuple[str, str], str] = {info: code for code, info in TAG_OF.items()}
PLAIN = "01"


def tag(kind: str, bit: str) -> str:
    return TAG_CODE[(kind, bit)]


def gz_to_ll(w: str) -> str:
    """Read a Z2-cell word in the lamplighter alphabet; untagged cells become 0 and 1."""
    return w.translate(_UNTAG)


_UNTAG = str.maketrans({"u": "0", "U": "1"})


def gz_spec(G: GPresentation) -> GroupSpec:
    """G wr Z generated by a, a^-1 and the generators of G placed at 0."""
    return wreath_over_z(f"gz:{G.name}", G.lamp_group, {name: value for name, (value, _) in G.generators.items()})


def _require_gz(G: GPresentation, g: WreathElement) -> None:
    if g.base != BaseKind.Z or g.lamp_group != G.lamp_group:
        raise StructureError(f"expected an element of {G.lamp_group} wr Z, got {g.lamp_group} wr {g.base.value}")


def gz_encode(G: GPresentation, g: WreathElement) -> str:
    _require_gz(G, g)
    frame = span_frame(g)
    lamps = g.lamp_map
    z = g.pos
    cells = []
    for i in range(frame.l, frame.r + 1):
        word = G.encode(lamps[i]) if i in lamps else G.identity_word
        if i == 0:
            kind = "B" if z == 0 else "A"
        elif i == z:
            kind = "C"
        else:
            kind = "u"
        cells.append(tag(kind, word[0]) + word[1:])
    return "".join(cells)


def split_cells(w: str) -> List[Tuple[str, str]]:
    """Split a tagged word into (tag kind, untagged cell word) pairs.

    Raises:
        WordParseError: On an unknown symbol or a leading plain letter
    """
    cells: List[Tuple[str, str]] = []
    for i, c in enumerate(w):
        if c in TAG_OF:
            kind, bit = TAG_OF[c]
            cells.append((kind, bit))
        elif c in PLAIN:
            if not cells:
                raise WordParseError(w, i, "word starts inside a cell")
            kind, word = cells[-1]
            cells[-1] = (kind, word + c)
        else:
            raise WordParseError(w, i, "unknown symbol")
    return cells


def gz_decode(G: GPresentation, w: str) -> WreathElement:
    """Invert ``gz_encode``.

    Raises:
        WordParseError: With a cell index for a cell word outside L_G or an
            unneeded edge cell, with a symbol index otherwise
    """
    if not w:
        raise WordParseError(w, 0, "empty word")
    cells = split_cells(w)
    origin = light = None
    for k, (kind, word) in enumerate(cells):
        if not G.accepts(word):
            raise WordParseError(w, k, "cell word not in L_G", unit="cell")
        if kind in "AB":
            if origin is not None:
                raise WordParseError(w, k, "second origin marker", unit="cell")
            origin = k
        if kind in "BC":
            if light is not None:
                raise WordParseError(w, k, "second lamplighter marker", unit="cell")
            light = k
    if origin is None:
        raise WordParseError(w, len(cells), "no origin marker", unit="cell")
    if light is None:
        raise WordParseError(w, len(cells), "no lamplighter marker", unit="cell")
    for k in (0, len(cells) - 1):
        kind, word = cells[k]
        if kind == "u" and word == G.identity_word:
            raise WordParseError(w, k, "identity cell at the edge of the word", unit="cell")
    lamps = {k - origin: G.decode(word) for k, (_, word) in enumerate(cells)}
    return make_element(BaseKind.Z, G.lamp_group, lamps, light - origin)


class CellScan(NamedTuple):
    """Progress of one tape through the tagged-cell language.

    ``ident`` counts the letters of the current cell that agree with the
    identity word, or is -1 after a disagreement.
    """

    started: bool = False
    first: bool = True
    marker: str = ""
    lang: FrozenSet[Any] = frozenset()
    ident: int = 0
    origin: int = 0
    light: int = 0


class CellReader:
    """Letter-by-letter membership test for gz words over one presentation."""

    def __init__(self, G: GPresentation):
        self.G = G
        self.identity = G.identity_word
        self.initial = frozenset([G.language.initial])

    def _ident(self, k: int, bit: str) -> int:
        if 0 <= k < len(self.identity) and self.identity[k] == bit:
            return k + 1
        return -1

    def is_identity(self, s: CellScan) -> bool:
        return s.ident == len(self.identity)

    def needed(self, s: CellScan) -> bool:
        return s.marker != "u" or not self.is_identity(s)

    def cell_done(self, s: CellScan) -> bool:
        return bool(s.lang & self.G.language.accepting) and (not s.first or self.needed(s))

    def read(self, s: CellScan, code: str) -> Optional[CellScan]:
        if code in TAG_OF:
            kind, bit = TAG_OF[code]
            if s.started and not self.cell_done(s):
                return None
            origin = s.origin + (kind in "AB")
            light = s.light + (kind in "BC")
            lang = self.G.language.step(self.initial, bit)
            if origin > 1 or light > 1 or not lang:
                return None
            return CellScan(True, not s.started, kind, lang, self._ident(0, bit), origin, light)
        if code in PLAIN and s.started:
            lang = self.G.language.step(s.lang, code)
            if not lang:
                return None
            return s._replace(lang=lang, ident=self._ident(s.ident, code))
        return None

    def complete(self, s: CellScan) -> bool:
        return (s.started and self.cell_done(s) and self.needed(s)
                and s.origin == 1 and s.light == 1)


class CellLogic(TapeLogic):
    """Rewrites gz_encode(g) into gz_encode(g * gen) one letter at a time.

    Cells before the lamplighter are copied.  For ``a`` the C-tag moves to
    the next cell: a leading identity cell is dropped and a fresh identity
    cell is appended when the lamplighter leaves the right end.  For a
    generator of G the lamplighter cells are fed, padded, to the generator
    automaton of G.
    """

    def __init__(self, G: GPresentation, gen: str):
        self.reader = CellReader(G)
        self.identity = G.identity_word
        self.gen = gen
        self.machine = None if gen == "a" else G.generators[gen][1]

    def accepting(self, state) -> bool:
        return state == "accept"

    def steps(self, state, uq, vq) -> Iterable[Step]:
        if state == "start":
            yield Step(("copy", CellScan(), CellScan(), None))
            return
        if state == "accept" or not uq or not vq:
            return
        phase, us, vs, extra = state
        yield from getattr(self, "_" + phase)(us, vs, extra, uq[0], vq[0])

    def _pair(self, phase: str, us: CellScan, vs: CellScan, extra, cu: str, cv: str) -> Iterable[Step]:
        us2, vs2 = self.reader.read(us, cu), self.reader.read(vs, cv)
        if us2 is not None and vs2 is not None:
            yield Step((phase, us2, vs2, extra), 1, 1)

    def _copy(self, us, vs, extra, cu, cv) -> Iterable[Step]:
        if cu in TAG_OF and TAG_OF[cu][0] in "BC":
            yield from (self._shift(us, vs, cu, cv) if self.machine is None else self._enter(us, vs, cu, cv))
        elif cu == cv and cu != END:
            yield from self._pair("copy", us, vs, None, cu, cv)

    def _tail(self, us, vs, extra, cu, cv) -> Iterable[Step]:
        if cu == END and cv == END:
            if self.reader.complete(us) and self.reader.complete(vs):
                yield Step("accept", 1, 1)
        elif cu == cv:
            yield from self._pair("tail", us, vs, None, cu, cv)

    # moving the lamplighter

    def _shift(self, us, vs, cu, cv) -> Iterable[Step]:
        kind, bit = TAG_OF[cu]
        if cv == tag("u" if kind == "C" else "A", bit):
            yield from self._pair("light", us, vs, None, cu, cv)
        if kind == "C" and not us.started:
            us2 = self.reader.read(us, cu)
            if us2 is not None:
                yield Step(("drop", us2, vs, None), du=1)

    def _light(self, us, vs, extra, cu, cv) -> Iterable[Step]:
        if cu in PLAIN:
            if cu == cv:
                yield from self._pair("light", us, vs, None, cu, cv)
        else:
            yield from self._arrive(us, vs, cu, cv)

    def _drop(self, us, vs, extra, cu, cv) -> Iterable[Step]:
        if cu in PLAIN:
            us2 = self.reader.read(us, cu)
            if us2 is not None:
                yield Step(("drop", us2, vs, None), du=1)
        elif self.reader.is_identity(us) and cu != END:
            yield from self._arrive(us, vs, cu, cv)

    def _arrive(self, us, vs, cu, cv) -> Iterable[Step]:
        if cu == END:
            if cv == tag("C", self.identity[0]):
                vs2 = self.reader.read(vs, cv)
                if vs2 is not None:
                    yield Step(("grow", us, vs2, 1), dv=1)
            return
        kind, bit = TAG_OF[cu]
        if kind in "uA" and cv == tag("C" if kind == "u" else "B", bit):
            yield from self._pair("tail", us, vs, None, cu, cv)

    def _grow(self, us, vs, k, cu, cv) -> Iterable[Step]:
        if k == len(self.identity):
            yield Step(("tail", us, vs, None))
        elif cv == self.identity[k]:
            vs2 = self.reader.read(vs, cv)
            if vs2 is not None:
                yield Step(("grow", us, vs2, k + 1), dv=1)

    # acting on the lamplighter cell

    def _enter(self, us, vs, cu, cv) -> Iterable[Step]:
        kind, bu = TAG_OF[cu]
        if cv not in TAG_OF or TAG_OF[cv][0] != kind:
            return
        current = self.machine.step(frozenset([self.machine.initial]), (bu, TAG_OF[cv][1]))
        if current:
            yield from self._pair("cell", us, vs, current, cu, cv)

    def _cell(self, us, vs, current, cu, cv) -> Iterable[Step]:
        u_more, v_more = cu in PLAIN, cv in PLAIN
        if not u_more and not v_more:
            if current & self.machine.accepting:
                yield Step(("tail", us, vs, None))
            return
        pair = (cu if u_more else PAD, cv if v_more else PAD)
        nxt = self.machine.step(current, pair)
        if not nxt:
            return
        us2 = self.reader.read(us, cu) if u_more else us
        vs2 = self.reader.read(vs, cv) if v_more else vs
        if us2 is not None and vs2 is not None:
            yield Step(("cell", us2, vs2, nxt), int(u_more), int(v_more))


_GZ_CACHE: Dict[Tuple[str, str], SyncFsa] = {}


def gz_mult_fsa(G: GPresentation, gen: str) -> SyncFsa:
    """Multiplier automaton for a, a-1, a generator of G or its inverse."""
    key = (G.name, gen)
    if key in _GZ_CACHE:
        return _GZ_CACHE[key]
    base, inverse = split_generator(gen)
    if base != "a" and base not in G.generators:
        raise StructureError(f"gz:{G.name} has no generator {gen!r}")
    if inverse and (base == "a" or G.lamp_inverse_differs(G.generators[base][0])):
        machine = gz_mult_fsa(G, base).transpose(f"gz:{G.name}:{gen}")
    elif inverse:
        raise StructureError(f"{base} is its own inverse in {G.name}")
    else:
        slack = len(G.identity_word)
        if base != "a":
            slack += max_padding_run(G.generators[base][1]) or 0
        logic = CellLogic(G, base)
        machine = Compiler(logic, GZ_ALPHABET.pairs(), f"gz:{G.name}:{gen}", QUEUE_LIMIT + slack).fsa()
    _GZ_CACHE[key] = machine
    return machine


def g_ball(G: GPresentation, radius: int = G_BALL_RADIUS) -> Dict[Any, int]:
    """Word-length ball of G itself over its generators and their inverses."""
    ops = lamp_ops(G.lamp_group)
    moves = []
    for value, _ in G.generators.values():
        moves += [value, ops.inv(value)]
    dist = {ops.identity: 0}
    frontier = [ops.identity]
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for m in moves:
                y = ops.mul(x, m)
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return dist


@dataclass
class GzConstants:
    """Constants of the length bounds for G wr Z.

    ``padding`` maps each generator of G (inverses included) to the most
    padding symbols in a convolution x (x) x*g_j.  ``C`` and ``D`` are only
    known when the caller certifies |g|_G <= C|w_G| + D.
    """

    presentation: str
    identity_length: int
    padding: Dict[str, int]
    C: Optional[int] = None
    D: Optional[int] = None
    report: Optional[BoundsReport] = None

    @property
    def K(self) -> int:
        return max([self.identity_length] + list(self.padding.values()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "presentation": self.presentation,
            "K0": self.identity_length,
            "padding": self.padding,
            "K": self.K,
            "C": self.C,
            "D": self.D,
            "bounds": self.report.to_dict() if self.report else None,
        }


def gz_constants(
    G: GPresentation,
    ball: Optional[DistanceMap] = None,
    C: Optional[int] = None,
    D: Optional[int] = None,
    radius: int = G_BALL_RADIUS,
) -> GzConstants:
    """Certify K0 and the padding counts d_j, then check the bounds on ``ball``.

    Each d_j is measured over a ball of G and must agree with the longest
    padded run the generator automaton admits.

    Raises:
        UnknownConstantError: If a padding count cannot be certified
    """
    ops = lamp_ops(G.lamp_group)
    elements = g_ball(G, radius)
    padding: Dict[str, int] = {}
    for name in G.generator_names():
        base, inverse = split_generator(name)
        value = G.generators[base][0]
        step = ops.inv(value) if inverse else value
        seen = max(abs(len(G.encode(ops.mul(x, step))) - len(G.encode(x))) for x in elements)
        structural = max_padding_run(G.generator_fsa(name))
        if structural is None:
            raise UnknownConstantError(f"{G.name}:{name}: padding runs are unbounded in the automaton")
        if seen != structural:
            raise UnknownConstantError(
                f"{G.name}:{name}: ball of radius {radius} reaches padding {seen}, automaton allows {structural}"
            )
        padding[name] = structural
    constants = GzConstants(G.name, len(G.identity_word), padding, C, D)
    if ball is not None:
        constants.report = gz_bounds_check(G, ball, constants)
    return constants


def gz_bounds_check(G: GPresentation, ball: DistanceMap, constants: GzConstants) -> BoundsReport:
    """(1/K)|w| - K0/K <= |g|, and |g| <= (C+D+2)|w| - 2 when C, D are known."""
    K = constants.K
    xi = delta = None
    if constants.C is not None and constants.D is not None:
        xi, delta = Fraction(constants.C + constants.D + 2), Fraction(-2)
    return check_bounds(
        f"gz:{G.name}", ball, lambda g: gz_encode(G, g),
        Fraction(1, K), Fraction(-constants.identity_length, K), xi, delta,
    )


class GzRepresentation:
    """Audit handle for G wr Z over one presentation."""

    def __init__(self, G: GPresentation):
        self.G = G
        self.name = f"gz:{G.name}"
        self.spec = gz_spec(G)

    def encode(self, g: WreathElement) -> str:
        return gz_encode(self.G, g)

    def decode(self, w: str) -> WreathElement:
        return gz_decode(self.G, w)

    def near_misses(self, u: str) -> Iterable[str]:
        return ()
