"""Compile two-tape edit logics into multiplier machines.

A logic describes how a representative ``u`` is rewritten into ``v``.  It sees
short buffers of the symbols read so far on each tape and emits silent steps
that consume from the buffers and optionally pop or push one stack frame.
The engine adds the reading of convolution pairs, padding handling and a
final move that marks both tapes as ended.
"""

import logging
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .automata import Pda, SyncFsa, crawl
from .constants import EXPORT_STATE_CAP, PAD, QUEUE_LIMIT
from .errors import StructureError

logger = logging.getLogger(__name__)

END = "$"


class Step(NamedTuple):
    """One silent move of a logic."""

    state: Hashable
    du: int = 0
    dv: int = 0
    pop: bool = False
    push: Tuple[Hashable, ...] = ()


class TapeLogic:
    """Base class for edit logics.

    Subclasses implement ``steps`` (moves that leave the stack alone apart
    from pushing), ``pops`` (moves that pop ``top``) and ``accepting``.
    Buffers hold plain symbols and the ``END`` token.
    """

    initial: Hashable = "start"
    uses_stack = False

    def steps(self, state: Hashable, uq: Tuple[str, ...], vq: Tuple[str, ...]) -> Iterable[Step]:
        raise NotImplementedError

    def pops(self, state: Hashable, uq: Tuple[str, ...], vq: Tuple[str, ...], top: Hashable) -> Iterable[Step]:
        return ()

    def accepting(self, state: Hashable) -> bool:
        raise NotImplementedError


class Control(NamedTuple):
    logic: Hashable
    uq: Tuple[str, ...]
    vq: Tuple[str, ...]
    u_end: bool
    v_end: bool
    finishing: bool


def _read(c: Control, pair: Tuple[str, str], limit: int) -> Optional[Control]:
    if c.finishing or len(c.uq) >= limit or len(c.vq) >= limit:
        return None
    queues = []
    ends = []
    for symbol, queue, ended in ((pair[0], c.uq, c.u_end), (pair[1], c.vq, c.v_end)):
        if symbol == PAD:
            queues.append(queue if ended else queue + (END,))
            ends.append(True)
        elif ended:
            return None
        else:
            queues.append(queue + (symbol,))
            ends.append(False)
    return Control(c.logic, queues[0], queues[1], ends[0], ends[1], False)


def _apply(c: Control, step: Step) -> Control:
    return Control(step.state, c.uq[step.du:], c.vq[step.dv:], c.u_end, c.v_end, c.finishing)


def _finish(c: Control) -> Optional[Control]:
    if c.finishing:
        return None
    return Control(
        c.logic,
        c.uq if c.u_end else c.uq + (END,),
        c.vq if c.v_end else c.vq + (END,),
        True,
        True,
        True,
    )


class Compiler:
    """Turns a TapeLogic into a Pda (lazily) or a SyncFsa (by crawling)."""

    def __init__(self, logic: TapeLogic, pairs: Sequence[Tuple[str, str]], name: str, limit: int = QUEUE_LIMIT):
        self.logic = logic
        self.pairs = list(pairs)
        self.name = name
        self.limit = limit
        self.start = Control(logic.initial, (), (), False, False, False)

    def accepting(self, c: Control) -> bool:
        return c.finishing and not c.uq and not c.vq and self.logic.accepting(c.logic)

    def silent(self, c: Control) -> List[Control]:
        out = [_apply(c, s) for s in self.logic.steps(c.logic, c.uq, c.vq) if not s.pop and not s.push]
        done = _finish(c)
        if done is not None:
            out.append(done)
        return out

    def pda(self) -> Pda:
        logic = self.logic
        limit = self.limit

        def rules(c: Control, symbol: Any, top: Optional[Hashable]):
            if symbol is not None:
                if top is None:
                    nxt = _read(c, symbol, limit)
                    if nxt is not None:
                        yield nxt, ()
                return
            if top is None:
                for s in logic.steps(c.logic, c.uq, c.vq):
                    if s.pop:
                        raise StructureError(f"{self.name}: pop step without a top")
                    yield _apply(c, s), s.push
                done = _finish(c)
                if done is not None:
                    yield done, ()
            else:
                for s in logic.pops(c.logic, c.uq, c.vq, top):
                    yield _apply(c, s), s.push

        return Pda(self.pairs, [], self.start, self.accepting, rules=rules, name=self.name)

    def settled(self, c: Control) -> bool:
        """One buffer is drained and no silent step is enabled, so the control may read.

        A control holding symbols on both tapes with no enabled step is dead.
        """
        if c.finishing or (c.uq and c.vq):
            return False
        return not any(not s.pop and not s.push for s in self.logic.steps(c.logic, c.uq, c.vq))

    def closure(self, c: Control) -> FrozenSet[Control]:
        seen = {c}
        todo = [c]
        while todo:
            for n in self.silent(todo.pop()):
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
        return frozenset(seen)

    def fsa(self, cap: int = EXPORT_STATE_CAP) -> SyncFsa:
        """Materialize a stack-free logic as a synchronous automaton.

        Only settled controls read, which keeps the buffers as short as the
        logic allows.  Logics compiled this way must only step when both
        buffers are nonempty and must decide from the buffer fronts.
        Controls that can neither read nor accept are dropped.
        """
        if self.logic.uses_stack:
            raise StructureError(f"{self.name} needs a stack")
        closures: Dict[Control, FrozenSet[Control]] = {}

        def close(c: Control) -> FrozenSet[Control]:
            if c not in closures:
                closures[c] = self.closure(c)
            return closures[c]

        def live(c: Control) -> bool:
            return any(self.settled(d) or self.accepting(d) for d in close(c))

        def follow(c: Control, pair: Tuple[str, str]) -> Set[Control]:
            out: Set[Control] = set()
            for d in close(c):
                if not self.settled(d):
                    continue
                nxt = _read(d, pair, self.limit)
                if nxt is not None and live(nxt):
                    out.add(nxt)
            return out

        order, table = crawl(self.start, self.pairs, follow, cap)
        number = {c: i for i, c in enumerate(order)}
        accepting = [number[c] for c in order if any(self.accepting(d) for d in close(c))]
        transitions = {(number[c], p): [number[t] for t in targets] for (c, p), targets in table.items()}
        logger.debug("%s: %d states", self.name, len(order))
        return SyncFsa(self.pairs, range(len(order)), 0, accepting, transitions, name=self.name)
