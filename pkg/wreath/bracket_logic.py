"""Segment grammar of bracketed lamp words and the edit logics built on it.

A word is read as a root segment (the horizontal line through the origin)
whose items are plain cells or bracketed child segments.  Parentheses hold
vertical segments with a D-anchor, square brackets hold horizontal segments
with an E-anchor.  The lamplighter words of Z2 wr Z are the bracket-free
case, which is why both representations share this module.
"""

from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .automata import Pda
from .engine import END, Step, TapeLogic

# symbol -> (kind, lamp bit, origin mark, lamplighter mark)
SYMBOLS: Dict[str, Tuple[str, int, bool, bool]] = {
    "0": ("plain", 0, False, False), "1": ("plain", 1, False, False),
    "A": ("plain", 0, True, False), "a": ("plain", 1, True, False),
    "B": ("plain", 0, True, True), "b": ("plain", 1, True, True),
    "C": ("plain", 0, False, True), "c": ("plain", 1, False, True),
    "D": ("D", 0, False, False), "d": ("D", 1, False, False),
    "P": ("D", 0, True, False), "p": ("D", 1, True, False),
    "Q": ("D", 0, True, True), "q": ("D", 1, True, True),
    "R": ("D", 0, False, True), "r": ("D", 1, False, True),
    "E": ("E", 0, False, False), "e": ("E", 1, False, False),
    "S": ("E", 0, False, True), "s": ("E", 1, False, True),
}
CODES = {info: code for code, info in SYMBOLS.items()}
FLAT_CODES = "01AaBbCc"
OPEN = {"(": "V", "[": "H"}
CLOSE = {")": "V", "]": "H"}


def symbol_for(kind: str, bit: int, origin: bool, light: bool) -> Optional[str]:
    return CODES.get((kind, bit, origin, light))


def lit(code: str) -> Optional[str]:
    kind, bit, origin, _ = SYMBOLS[code]
    return symbol_for(kind, bit, origin, True)


def unlit(code: str) -> Optional[str]:
    kind, bit, origin, _ = SYMBOLS[code]
    return symbol_for(kind, bit, origin, False)


def flipped(code: str) -> Optional[str]:
    kind, bit, origin, light = SYMBOLS[code]
    return symbol_for(kind, 1 - bit, origin, light)


def has_light(code: str) -> bool:
    return code in SYMBOLS and SYMBOLS[code][3]


def is_anchor(code: str) -> bool:
    return code in SYMBOLS and SYMBOLS[code][0] != "plain"


class Seg(NamedTuple):
    """Validation state of one segment.

    ``kind`` is "R" (root), "V" (inside parentheses) or "H" (inside square
    brackets); ``count`` saturates at 2.
    """

    kind: str
    first_level: bool = False
    anchor: bool = False
    count: int = 0
    last_zero: bool = False


ROOT = Seg("R")


def axis(seg: Seg) -> str:
    return "v" if seg.kind == "V" else "h"


def add_item(seg: Seg, code: str) -> Optional[Seg]:
    """Append a non-bracket symbol to a segment, or None if illegal."""
    if code not in SYMBOLS:
        return None
    kind, bit, origin, light = SYMBOLS[code]
    zero = kind == "plain" and bit == 0 and not origin and not light
    if kind == "plain":
        if origin and seg.kind != "R":
            return None
        if zero and seg.count == 0:
            return None
        anchor = seg.anchor
    else:
        if seg.anchor or (kind == "D") != (seg.kind == "V") or (kind == "E") != (seg.kind == "H"):
            return None
        if origin and not seg.first_level:
            return None
        anchor = True
    return Seg(seg.kind, seg.first_level, anchor, min(seg.count + 1, 2), zero)


def open_child(seg: Seg, bracket: str) -> Optional[Tuple[Seg, Seg]]:
    """Parent after the bracketed item and the fresh child segment."""
    child_kind = OPEN.get(bracket)
    if child_kind is None or child_kind == ("V" if seg.kind == "V" else "H"):
        return None
    parent = Seg(seg.kind, seg.first_level, seg.anchor, min(seg.count + 1, 2), False)
    return parent, Seg(child_kind, first_level=seg.kind == "R")


def can_close(seg: Seg, bracket: str) -> bool:
    return CLOSE.get(bracket) == seg.kind and seg.anchor and seg.count >= 2 and not seg.last_zero


def can_end(seg: Seg) -> bool:
    return seg.kind == "R" and seg.count >= 1 and not seg.last_zero


class Tally(NamedTuple):
    """Global marker counts of a word; ``first`` is kept while it is alone."""

    origin: int = 0
    light: int = 0
    length: int = 0
    first: Optional[str] = None


def tally(t: Tally, code: str) -> Optional[Tally]:
    origin, light = t.origin, t.light
    if code in SYMBOLS:
        _, _, o, l = SYMBOLS[code]
        origin += o
        light += l
    if origin > 1 or light > 1:
        return None
    return Tally(origin, light, min(t.length + 1, 2), code if t.length == 0 else None)


def tally_complete(t: Tally, flat: bool, allow_identity: bool) -> bool:
    """Marker conditions at the end of a word.

    Bracket-free words need one origin and one lamplighter mark.  Bracketed
    words additionally treat the one-symbol words specially: ``A`` stands for
    the identity, and ``B`` is not a representative.
    """
    if flat:
        return t.origin == 1 and t.light == 1
    if t.light == 0:
        return allow_identity and t.length == 1 and t.first == "A"
    return t.origin == 1 and t.light == 1 and not (t.length == 1 and t.first == "B")


def language_pda(flat: bool, name: str) -> Pda:
    """Deterministic pushdown automaton for the representative language."""
    alphabet = list(FLAT_CODES) if flat else list(SYMBOLS) + list("()[]")

    def accepting(state) -> bool:
        seg, t = state
        return can_end(seg) and tally_complete(t, flat, allow_identity=True)

    def rules(state, code, top):
        if code is None:
            return
        seg, t = state
        t2 = tally(t, code)
        if t2 is None:
            return
        if code in OPEN and top is None and not flat:
            opened = open_child(seg, code)
            if opened:
                yield (opened[1], t2), (opened[0],)
        elif code in CLOSE and top is not None:
            if can_close(seg, code):
                yield (top, t2), ()
        elif code in SYMBOLS and top is None:
            nxt = add_item(seg, code)
            if nxt is not None:
                yield (nxt, t2), ()

    return Pda(alphabet, [], (ROOT, Tally()), accepting, rules=rules, deterministic=True, name=name)


# Identity pairs of the bracketed representation, per generator.  The
# identity is written ``A``, outside the marker rules of every other word.
IDENTITY_PAIRS: Dict[str, List[Tuple[str, str]]] = {
    "h": [("A", "b"), ("b", "A")],
    "a": [("A", "AC"), ("CA", "A")],
    "b": [("A", "(PC)"), ("(CP)", "A")],
}

PRE, MID, POST = "pre", "mid", "post"
NEXT, ANCHOR, AFTER = "next", "anchor", "after"


class Run(NamedTuple):
    phase: str
    useg: Seg
    vseg: Seg
    flag: Optional[str]
    ut: Tally
    vt: Tally


class Frame(NamedTuple):
    useg: Seg
    vseg: Seg
    flag: Optional[str]


class MoveLogic(TapeLogic):
    """Rewrites u into v for right multiplication by h, a or b.

    ``a`` moves the lamplighter along horizontal lines and ``b`` along
    vertical ones.  The source is the lamplighter symbol of u; the target is
    the next cell of the same line, which is the next item of the segment,
    the next item after the enclosing bracket, the anchor of a bracketed
    item, or a fresh ``C`` appended at the end of the segment.
    """

    def __init__(self, gen: str, flat: bool):
        self.gen = gen
        self.flat = flat
        self.uses_stack = not flat
        self.axis = "v" if gen == "b" else "h"

    def accepting(self, state) -> bool:
        return state == "accept"

    def steps(self, state, uq, vq) -> Iterable[Step]:
        if state == "start":
            yield Step(Run(PRE, ROOT, ROOT, None, Tally(), Tally()))
            if not self.flat:
                for k in range(len(IDENTITY_PAIRS[self.gen])):
                    yield Step(("lit", k, 0, 0))
            return
        if state == "accept":
            return
        if state[0] == "lit":
            yield from self._literal(state, uq, vq)
            return
        if not uq or not vq:
            return
        yield from self._run(state, uq, vq)

    def _literal(self, state, uq, vq) -> Iterable[Step]:
        _, k, i, j = state
        u, v = IDENTITY_PAIRS[self.gen][k]
        if i < len(u) and uq[:1] == (u[i],):
            yield Step(("lit", k, i + 1, j), du=1)
        if j < len(v) and vq[:1] == (v[j],):
            yield Step(("lit", k, i, j + 1), dv=1)
        if i == len(u) and j == len(v) and uq[:1] == (END,) and vq[:1] == (END,):
            yield Step("accept", du=1, dv=1)

    def _item(self, run: Run, cu: str, cv: str, **changes) -> Optional[Run]:
        useg, vseg = add_item(run.useg, cu), add_item(run.vseg, cv)
        ut, vt = tally(run.ut, cu), tally(run.vt, cv)
        if None in (useg, vseg, ut, vt):
            return None
        return run._replace(useg=useg, vseg=vseg, ut=ut, vt=vt, **changes)

    def _run(self, run: Run, uq, vq) -> Iterable[Step]:
        cu, cv = uq[0], vq[0]
        if run.phase == PRE and has_light(cu):
            yield from self._source(run, uq, vq)
            return
        if run.phase == PRE and cu in OPEN and not self.flat and self.gen != "h":
            yield from self._collapse(run, uq, vq)
        if run.flag == NEXT:
            yield from self._target(run, uq, vq)
            return
        if run.flag == ANCHOR and is_anchor(cu):
            if lit(cu) == cv:
                nxt = self._item(run, cu, cv, phase=POST, flag=None)
                if nxt:
                    yield Step(nxt, du=1, dv=1)
            return
        if cu != cv:
            return
        if cu == END:
            if (run.phase == POST and can_end(run.useg) and can_end(run.vseg)
                    and tally_complete(run.ut, self.flat, False) and tally_complete(run.vt, self.flat, False)):
                yield Step("accept", du=1, dv=1)
        elif cu in OPEN:
            ou, ov = open_child(run.useg, cu), open_child(run.vseg, cu)
            ut, vt = tally(run.ut, cu), tally(run.vt, cu)
            if ou and ov and ut and vt:
                frame = Frame(ou[0], ov[0], run.flag)
                yield Step(run._replace(useg=ou[1], vseg=ov[1], flag=None, ut=ut, vt=vt), 1, 1, push=(frame,))
        elif cu in SYMBOLS:
            nxt = self._item(run, cu, cv)
            if nxt:
                yield Step(nxt, 1, 1)

    def pops(self, state, uq, vq, top) -> Iterable[Step]:
        if not isinstance(state, Run) or not uq or not vq:
            return
        cu, cv = uq[0], vq[0]
        if cu != cv or cu not in CLOSE or state.flag in (NEXT, ANCHOR):
            return
        if not (can_close(state.useg, cu) and can_close(state.vseg, cu)):
            return
        flag = NEXT if state.flag == AFTER else top.flag
        ut, vt = tally(state.ut, cu), tally(state.vt, cu)
        yield Step(state._replace(useg=top.useg, vseg=top.vseg, flag=flag, ut=ut, vt=vt), 1, 1, pop=True)

    def _source(self, run: Run, uq, vq) -> Iterable[Step]:
        cu, cv = uq[0], vq[0]
        if self.gen == "h":
            if cv == flipped(cu):
                nxt = self._item(run, cu, cv, phase=POST)
                if nxt:
                    yield Step(nxt, 1, 1)
            return
        kind, bit, origin, _ = SYMBOLS[cu]
        if kind != "plain":
            flag = NEXT if axis(run.useg) == self.axis else AFTER
            if cv == unlit(cu):
                nxt = self._item(run, cu, cv, phase=MID, flag=flag)
                if nxt:
                    yield Step(nxt, 1, 1)
            return
        if axis(run.useg) == self.axis:
            if cu == "C" and run.useg.count == 0:
                useg, ut = add_item(run.useg, cu), tally(run.ut, cu)
                if useg and ut:
                    yield Step(run._replace(useg=useg, ut=ut, phase=MID, flag=NEXT), du=1)
            elif cv == unlit(cu):
                nxt = self._item(run, cu, cv, phase=MID, flag=NEXT)
                if nxt:
                    yield Step(nxt, 1, 1)
            return
        # no line along the move yet: open a two-cell segment around the cell
        if self.axis == "h":
            inserted = ("[", symbol_for("E", bit, False, False), "C", "]")
        else:
            inserted = ("(", symbol_for("D", bit, origin, False), "C", ")")
        if len(vq) < 4 or vq[:4] != inserted:
            return
        opened = open_child(run.vseg, inserted[0])
        useg, ut = add_item(run.useg, cu), tally(run.ut, cu)
        vt: Optional[Tally] = run.vt
        for code in inserted:
            vt = vt and tally(vt, code)
        if opened and useg and ut and vt:
            yield Step(run._replace(useg=useg, vseg=opened[0], ut=ut, vt=vt, phase=POST), du=1, dv=4)

    def _collapse(self, run: Run, uq, vq) -> Iterable[Step]:
        """A two-cell segment ``C`` + anchor shrinks to a single lit cell."""
        bracket = uq[0]
        child_axis = "v" if OPEN[bracket] == "V" else "h"
        if child_axis != self.axis or len(uq) < 4:
            return
        _, c, anchor, close = uq[:4]
        if c != "C" or not is_anchor(anchor) or has_light(anchor) or CLOSE.get(close) != OPEN[bracket]:
            return
        _, bit, origin, _ = SYMBOLS[anchor]
        if vq[0] != symbol_for("plain", bit, origin, True):
            return
        opened = open_child(run.useg, bracket)
        if not opened:
            return
        child = add_item(opened[1], c)
        child = child and add_item(child, anchor)
        if not child or not can_close(child, close):
            return
        ut: Optional[Tally] = run.ut
        for code in uq[:4]:
            ut = ut and tally(ut, code)
        vseg, vt = add_item(run.vseg, vq[0]), tally(run.vt, vq[0])
        if ut and vseg and vt:
            yield Step(run._replace(useg=opened[0], vseg=vseg, ut=ut, vt=vt, phase=POST), du=4, dv=1)

    def _target(self, run: Run, uq, vq) -> Iterable[Step]:
        cu, cv = uq[0], vq[0]
        if cu in CLOSE or cu == END:
            if cv == "C":
                vseg, vt = add_item(run.vseg, "C"), tally(run.vt, "C")
                if vseg and vt:
                    yield Step(run._replace(vseg=vseg, vt=vt, phase=POST, flag=None), dv=1)
        elif cu in OPEN:
            ou, ov = open_child(run.useg, cu), open_child(run.vseg, cv) if cv == cu else None
            ut, vt = tally(run.ut, cu), tally(run.vt, cu)
            if ou and ov and ut and vt:
                frame = Frame(ou[0], ov[0], None)
                yield Step(run._replace(useg=ou[1], vseg=ov[1], flag=ANCHOR, ut=ut, vt=vt), 1, 1, push=(frame,))
        elif cu in SYMBOLS and not has_light(cu) and cv == lit(cu):
            nxt = self._item(run, cu, cv, phase=POST, flag=None)
            if nxt:
                yield Step(nxt, 1, 1)
