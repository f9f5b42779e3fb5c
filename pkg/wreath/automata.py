"""Machine models over plain and convolution alphabets.

Words are ``str`` for single-tape machines and tuples of ``(x, y)`` pairs for
machines reading a convolution.  ``None`` stands for a silent move and, in
stack keys, for "do not inspect the stack".
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from typing_extensions import Protocol

from .constants import (
    BRACKETS,
    ENUMERATION_CAP,
    EXPORT_STATE_CAP,
    MAX_SILENT_STEPS,
    PAD,
    STACK_HEIGHT_FACTOR,
    STACK_HEIGHT_SLACK,
    STATUS_FAIL,
    STATUS_PASS,
)
from .errors import ResourceCapError, RunBoundsExceeded, StructureError, WordParseError
from .groups import DistanceMap, GroupSpec, WreathElement, wreath_mul

logger = logging.getLogger(__name__)

State = Hashable
Pair = Tuple[str, str]
Word = Union[str, Tuple[Pair, ...]]


@dataclass(frozen=True)
class SymbolTable:
    """Ordered named symbols with one-character ASCII codes."""

    name: str
    symbols: Tuple[Tuple[str, str], ...]

    def __post_init__(self) -> None:
        codes = [code for _, code in self.symbols]
        if len(set(codes)) != len(codes):
            raise StructureError(f"symbol table {self.name} has repeated codes")
        for label, code in self.symbols:
            if len(code) != 1:
                raise StructureError(f"code {code!r} of {label} is not one character")
            if code == PAD:
                raise StructureError(f"{PAD!r} is reserved for padding")
            if code in BRACKETS and label != code:
                raise StructureError(f"{code!r} is reserved for the bracket symbol")

    @property
    def codes(self) -> List[str]:
        return [code for _, code in self.symbols]

    def label(self, code: str) -> str:
        for label, c in self.symbols:
            if c == code:
                return label
        raise StructureError(f"unknown symbol {code!r} in table {self.name}")

    def pairs(self) -> List[Pair]:
        """Pair alphabet of the convolution, without (pad, pad)."""
        padded = self.codes + [PAD]
        return [(x, y) for x, y in product(padded, padded) if (x, y) != (PAD, PAD)]


def convolve(u: str, v: str) -> Tuple[Pair, ...]:
    """Pair the k-th symbols of u and v, padding the shorter word."""
    n = max(len(u), len(v))
    return tuple((u[k] if k < len(u) else PAD, v[k] if k < len(v) else PAD) for k in range(n))


def is_convolution(w: Sequence[Pair]) -> bool:
    """Whether padding occurs only as a suffix of exactly one component."""
    ended = [False, False]
    for pair in w:
        if pair == (PAD, PAD):
            return False
        for side in (0, 1):
            if pair[side] == PAD:
                ended[side] = True
            elif ended[side]:
                return False
    return True


def deconvolve(w: Sequence[Pair]) -> Tuple[str, str]:
    if not is_convolution(w):
        raise StructureError("not a convolution: padding inside a component")
    u = "".join(x for x, _ in w if x != PAD)
    v = "".join(y for _, y in w if y != PAD)
    return u, v


def transpose_pair(pair: Optional[Pair]) -> Optional[Pair]:
    return None if pair is None else (pair[1], pair[0])


def format_convolution(w: Sequence[Pair]) -> str:
    """Two aligned rows padded with ``#``."""
    return "".join(x for x, _ in w) + "\n" + "".join(y for _, y in w)


def crawl(
    initial: State,
    symbols: Sequence[Any],
    follow: Callable[[State, Any], Iterable[State]],
    cap: int = EXPORT_STATE_CAP,
) -> Tuple[List[State], Dict[Tuple[State, Any], FrozenSet[State]]]:
    """Explore the states reachable from ``initial`` under ``follow``.

    Returns:
        States in discovery order and the transition map
    """
    order = [initial]
    seen = {initial}
    transitions: Dict[Tuple[State, Any], FrozenSet[State]] = {}
    i = 0
    while i < len(order):
        state = order[i]
        i += 1
        for symbol in symbols:
            targets = frozenset(follow(state, symbol))
            if not targets:
                continue
            transitions[(state, symbol)] = targets
            for t in targets:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    if len(order) > cap:
                        raise ResourceCapError("machine tabulation", cap)
    return order, transitions


class Fsa:
    """Nondeterministic finite automaton without silent moves.

    Args:
        alphabet: Ordered input symbols
        states: State set
        initial: Initial state
        accepting: Accepting states
        transitions: (state, symbol) to set of states
        name: Machine id used in reports and exports
    """

    kind = "fsa"

    def __init__(
        self,
        alphabet: Sequence[Any],
        states: Iterable[State],
        initial: State,
        accepting: Iterable[State],
        transitions: Mapping[Tuple[State, Any], Iterable[State]],
        name: str = "",
    ):
        self.alphabet = list(alphabet)
        self.states = list(dict.fromkeys(states))
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.transitions = {key: frozenset(targets) for key, targets in transitions.items()}
        self.name = name
        self._validate()
        self._outgoing: Dict[State, Dict[Any, FrozenSet[State]]] = {}
        for (state, symbol), targets in self.transitions.items():
            self._outgoing.setdefault(state, {})[symbol] = targets

    def _validate(self) -> None:
        known = set(self.states)
        symbols = set(self.alphabet)
        if self.initial not in known:
            raise StructureError(f"{self.name}: initial state is not a state")
        if not self.accepting <= known:
            raise StructureError(f"{self.name}: accepting states outside the state set")
        for (state, symbol), targets in self.transitions.items():
            if symbol not in symbols:
                raise StructureError(f"{self.name}: transition symbol {symbol!r} not in the alphabet")
            if state not in known or not targets <= known:
                raise StructureError(f"{self.name}: transition uses an unknown state")

    def step(self, current: FrozenSet[State], symbol: Any) -> FrozenSet[State]:
        out: Set[State] = set()
        for state in current:
            out |= self._outgoing.get(state, {}).get(symbol, frozenset())
        return frozenset(out)

    def outgoing(self, state: State) -> Dict[Any, FrozenSet[State]]:
        return self._outgoing.get(state, {})

    def accepts(self, word: Sequence[Any]) -> bool:
        return fsa_run(self, word)

    def distance_to_accept(self) -> Dict[State, int]:
        """Shortest number of steps from each state to an accepting state."""
        backward: Dict[State, Set[State]] = {}
        for (state, _), targets in self.transitions.items():
            for t in targets:
                backward.setdefault(t, set()).add(state)
        dist = {s: 0 for s in self.accepting}
        queue = deque(self.accepting)
        while queue:
            s = queue.popleft()
            for p in backward.get(s, ()):
                if p not in dist:
                    dist[p] = dist[s] + 1
                    queue.append(p)
        return dist


class SyncFsa(Fsa):
    """Two-tape synchronous automaton; the alphabet consists of pairs."""

    def transpose(self, name: str = "") -> "SyncFsa":
        return SyncFsa(
            [transpose_pair(p) for p in self.alphabet],
            self.states,
            self.initial,
            self.accepting,
            {(s, transpose_pair(p)): t for (s, p), t in self.transitions.items()},
            name=name or self.name + "^T",
        )


def fsa_run(m: Fsa, w: Sequence[Any]) -> bool:
    """Subset simulation of ``m`` on ``w``.

    Raises:
        StructureError: If ``w`` holds a symbol outside the alphabet
    """
    symbols = set(m.alphabet)
    current = frozenset([m.initial])
    for i, symbol in enumerate(w):
        if symbol not in symbols:
            raise StructureError(f"{m.name}: symbol {symbol!r} at position {i} is not in the alphabet")
        current = m.step(current, symbol)
        if not current:
            return False
    return bool(current & m.accepting)


def max_padding_run(m: SyncFsa) -> Optional[int]:
    """Longest run of padded pairs on an accepting path, or None if unbounded."""
    forward = {m.initial}
    queue = deque([m.initial])
    while queue:
        s = queue.popleft()
        for targets in m.outgoing(s).values():
            for t in targets:
                if t not in forward:
                    forward.add(t)
                    queue.append(t)
    useful = forward & set(m.distance_to_accept())
    pad_edges: Dict[State, Set[State]] = {}
    for (s, pair), targets in m.transitions.items():
        if PAD in pair and s in useful:
            pad_edges.setdefault(s, set()).update(t for t in targets if t in useful)
    longest: Dict[State, int] = {}
    visiting: Set[State] = set()

    def depth(s: State) -> Optional[int]:
        if s in longest:
            return longest[s]
        if s in visiting:
            return None
        visiting.add(s)
        best = 0
        for t in pad_edges.get(s, ()):
            d = depth(t)
            if d is None:
                return None
            best = max(best, d + 1)
        visiting.discard(s)
        longest[s] = best
        return best

    result = 0
    for s in useful:
        d = depth(s)
        if d is None:
            return None
        result = max(result, d)
    return result


@dataclass(frozen=True)
class RunBounds:
    """Resource limits for pushdown and stack automaton runs."""

    max_silent: int = MAX_SILENT_STEPS
    max_stack: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_silent <= 0 or (self.max_stack is not None and self.max_stack <= 0):
            raise StructureError("run bounds must be positive")

    def stack_limit(self, input_length: int) -> int:
        if self.max_stack is not None:
            return self.max_stack
        return STACK_HEIGHT_FACTOR * input_length + STACK_HEIGHT_SLACK


DEFAULT_BOUNDS = RunBounds()

PdaMove = Tuple[State, Tuple[Hashable, ...]]
PdaRules = Callable[[State, Any, Optional[Hashable]], Iterable[PdaMove]]


class Pda:
    """Pushdown automaton accepting by final state with the input exhausted.

    A transition keyed by a top symbol pops it and pushes the given tuple
    (last element on top); a transition keyed by ``None`` leaves the stack
    untouched below the pushed tuple.  The relation is either an explicit
    table or a rule function over a finite control.
    """

    kind = "pda"

    def __init__(
        self,
        alphabet: Sequence[Any],
        stack_alphabet: Iterable[Hashable],
        initial: State,
        accepting: Union[Iterable[State], Callable[[State], bool]],
        transitions: Optional[Mapping[Tuple[State, Any, Optional[Hashable]], Iterable[PdaMove]]] = None,
        rules: Optional[PdaRules] = None,
        deterministic: bool = False,
        name: str = "",
    ):
        if (transitions is None) == (rules is None):
            raise StructureError("a Pda needs exactly one of a table or rules")
        self.alphabet = list(alphabet)
        self.stack_alphabet = list(dict.fromkeys(stack_alphabet))
        self.initial = initial
        if callable(accepting):
            self._is_accepting = accepting
            self.accepting: Optional[FrozenSet[State]] = None
        else:
            self.accepting = frozenset(accepting)
            self._is_accepting = self.accepting.__contains__
        self.transitions = None if transitions is None else {k: frozenset(v) for k, v in transitions.items()}
        self.rules = rules
        self.deterministic = deterministic
        self.name = name
        self._memo: Dict[Tuple[State, Any, Optional[Hashable]], FrozenSet[PdaMove]] = {}
        if self.transitions is not None:
            self._validate()

    def _validate(self) -> None:
        symbols = set(self.alphabet)
        stack = set(self.stack_alphabet)
        for (state, symbol, top), moves in self.transitions.items():
            if symbol is not None and symbol not in symbols:
                raise StructureError(f"{self.name}: symbol {symbol!r} not in the alphabet")
            if top is not None and top not in stack:
                raise StructureError(f"{self.name}: stack symbol {top!r} not in the stack alphabet")
            for _, push in moves:
                if not set(push) <= stack:
                    raise StructureError(f"{self.name}: pushes a symbol outside the stack alphabet")

    def is_accepting(self, state: State) -> bool:
        return self._is_accepting(state)

    def moves(self, state: State, symbol: Any, top: Optional[Hashable]) -> FrozenSet[PdaMove]:
        key = (state, symbol, top)
        if self.transitions is not None:
            return self.transitions.get(key, frozenset())
        found = self._memo.get(key)
        if found is None:
            found = frozenset((s, tuple(push)) for s, push in self.rules(state, symbol, top))
            self._memo[key] = found
        return found

    def transpose(self, name: str = "") -> "Pda":
        name = name or self.name + "^T"
        if self.transitions is not None:
            table = {(s, transpose_pair(p), t): m for (s, p, t), m in self.transitions.items()}
            accepting = self.accepting if self.accepting is not None else self._is_accepting
            return Pda([transpose_pair(p) for p in self.alphabet], self.stack_alphabet, self.initial,
                       accepting, transitions=table, deterministic=self.deterministic, name=name)
        inner = self

        def rules(state: State, symbol: Any, top: Optional[Hashable]) -> Iterable[PdaMove]:
            return inner.moves(state, transpose_pair(symbol), top)

        return Pda([transpose_pair(p) for p in self.alphabet], self.stack_alphabet, self.initial,
                   self._is_accepting, rules=rules, deterministic=self.deterministic, name=name)

    def tabulate(self, cap: int = EXPORT_STATE_CAP) -> "Pda":
        """Explicit table of the part of the machine reachable from the initial state."""
        if self.transitions is not None:
            return self
        states = [self.initial]
        seen_states = {self.initial}
        tops: List[Hashable] = []
        seen_tops: Set[Hashable] = set()
        table: Dict[Tuple[State, Any, Optional[Hashable]], FrozenSet[PdaMove]] = {}
        done: Set[Tuple[State, Optional[Hashable]]] = set()
        changed = True
        while changed:
            changed = False
            for state in list(states):
                for top in [None] + list(tops):
                    if (state, top) in done:
                        continue
                    done.add((state, top))
                    changed = True
                    for symbol in [None] + self.alphabet:
                        moves = self.moves(state, symbol, top)
                        if not moves:
                            continue
                        table[(state, symbol, top)] = moves
                        for target, push in moves:
                            if target not in seen_states:
                                seen_states.add(target)
                                states.append(target)
                                if len(states) > cap:
                                    raise ResourceCapError(f"tabulating {self.name}", cap)
                            for sym in push:
                                if sym not in seen_tops:
                                    seen_tops.add(sym)
                                    tops.append(sym)
        accepting = [s for s in states if self.is_accepting(s)]
        return Pda(self.alphabet, tops, self.initial, accepting, transitions=table,
                   deterministic=self.deterministic, name=self.name)

    def state_list(self) -> List[State]:
        if self.transitions is None:
            raise StructureError(f"{self.name} is rule-defined; tabulate it first")
        out = [self.initial]
        for (s, _, _), moves in self.transitions.items():
            out.append(s)
            out.extend(t for t, _ in moves)
        return list(dict.fromkeys(out))


PUSH, POP, UP, DOWN, STAY = "push", "pop", "up", "down", "stay"
SaAction = Tuple[str, ...]
SaKey = Tuple[State, Any, Optional[Hashable], bool]


class StackAutomaton:
    """One-way stack automaton whose pointer may walk the stack read-only.

    Keys are (state, input symbol or None, symbol under the pointer or None
    for the empty stack, pointer-at-top flag).  Actions are ``("push", s)``,
    ``("pop",)``, ``("up",)``, ``("down",)`` and ``("stay",)``.
    """

    kind = "sa"

    def __init__(
        self,
        alphabet: Sequence[Any],
        stack_alphabet: Iterable[Hashable],
        states: Iterable[State],
        initial: State,
        accepting: Iterable[State],
        transitions: Mapping[SaKey, Iterable[Tuple[State, SaAction]]],
        name: str = "",
    ):
        self.alphabet = list(alphabet)
        self.stack_alphabet = list(dict.fromkeys(stack_alphabet))
        self.states = list(dict.fromkeys(states))
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.transitions = {k: frozenset(v) for k, v in transitions.items()}
        self.name = name
        self._validate()

    def _validate(self) -> None:
        symbols = set(self.alphabet)
        stack = set(self.stack_alphabet)
        known = set(self.states)
        if self.initial not in known or not self.accepting <= known:
            raise StructureError(f"{self.name}: initial or accepting state unknown")
        for (state, symbol, under, at_top), moves in self.transitions.items():
            if state not in known:
                raise StructureError(f"{self.name}: unknown state {state!r}")
            if symbol is not None and symbol not in symbols:
                raise StructureError(f"{self.name}: symbol {symbol!r} not in the alphabet")
            if under is not None and under not in stack:
                raise StructureError(f"{self.name}: stack symbol {under!r} not in the stack alphabet")
            if under is None and not at_top:
                raise StructureError(f"{self.name}: the empty stack has its pointer at the top")
            for target, action in moves:
                if target not in known:
                    raise StructureError(f"{self.name}: unknown state {target!r}")
                verb = action[0]
                if verb == PUSH:
                    if not at_top or len(action) != 2 or action[1] not in stack:
                        raise StructureError(f"{self.name}: illegal push {action!r}")
                elif verb == POP:
                    if not at_top or under is None:
                        raise StructureError(f"{self.name}: pop away from the top")
                elif verb == UP:
                    if at_top:
                        raise StructureError(f"{self.name}: move-up above the top")
                elif verb == DOWN:
                    if under is None:
                        raise StructureError(f"{self.name}: move-down on the empty stack")
                elif verb != STAY:
                    raise StructureError(f"{self.name}: unknown action {action!r}")

    def moves(self, state: State, symbol: Any, under: Optional[Hashable], at_top: bool) -> FrozenSet[Tuple[State, SaAction]]:
        return self.transitions.get((state, symbol, under, at_top), frozenset())

    def transpose(self, name: str = "") -> "StackAutomaton":
        return StackAutomaton(
            [transpose_pair(p) for p in self.alphabet],
            self.stack_alphabet,
            self.states,
            self.initial,
            self.accepting,
            {(s, transpose_pair(p), u, t): m for (s, p, u, t), m in self.transitions.items()},
            name=name or self.name + "^T",
        )


def _pda_successors(m: Pda, state: State, pos: int, stack: Tuple[Hashable, ...], w: Sequence[Any]) -> Iterator[Tuple[State, int, Tuple[Hashable, ...], bool]]:
    symbols: List[Any] = [w[pos]] if pos < len(w) else []
    symbols.append(None)
    tops: List[Optional[Hashable]] = [stack[-1]] if stack else []
    tops.append(None)
    for symbol in symbols:
        for top in tops:
            base = stack[:-1] if top is not None else stack
            for target, push in m.moves(state, symbol, top):
                yield target, pos + (symbol is not None), base + push, symbol is not None


def pda_run(m: Pda, w: Sequence[Any], bounds: Optional[RunBounds] = None) -> bool:
    """Decide whether ``m`` accepts ``w`` within ``bounds``.

    Deterministic machines are simulated directly; otherwise configurations
    are searched breadth-first with a visited set.

    Raises:
        RunBoundsExceeded: If no accepting run was found and some branch ran
            out of silent steps or stack height
        StructureError: If a machine flagged deterministic offers two moves
    """
    bounds = bounds or DEFAULT_BOUNDS
    limit = bounds.stack_limit(len(w))
    if m.deterministic:
        return _pda_direct(m, w, bounds, limit)
    start = (m.initial, 0, ())
    queue = deque([(start, 0)])
    visited = {start}
    exceeded: Optional[RunBoundsExceeded] = None
    while queue:
        (state, pos, stack), silent = queue.popleft()
        if pos == len(w) and m.is_accepting(state):
            return True
        for target, new_pos, new_stack, consumed in _pda_successors(m, state, pos, stack, w):
            steps = 0 if consumed else silent + 1
            if steps > bounds.max_silent:
                exceeded = RunBoundsExceeded("silent steps", bounds.max_silent, pos)
                continue
            if len(new_stack) > limit:
                exceeded = RunBoundsExceeded("stack height", limit, pos)
                continue
            config = (target, new_pos, new_stack)
            if config not in visited:
                visited.add(config)
                queue.append((config, steps))
    if exceeded is not None:
        raise exceeded
    return False


def _pda_direct(m: Pda, w: Sequence[Any], bounds: RunBounds, limit: int) -> bool:
    state, pos, stack = m.initial, 0, ()
    silent = 0
    while True:
        if pos == len(w) and m.is_accepting(state):
            return True
        options = list(_pda_successors(m, state, pos, stack, w))
        if not options:
            return False
        if len(options) > 1:
            raise StructureError(f"{m.name} is flagged deterministic but offers {len(options)} moves")
        state, new_pos, stack, consumed = options[0]
        silent = 0 if consumed else silent + 1
        if silent > bounds.max_silent:
            raise RunBoundsExceeded("silent steps", bounds.max_silent, pos)
        if len(stack) > limit:
            raise RunBoundsExceeded("stack height", limit, pos)
        pos = new_pos


def sa_run(m: StackAutomaton, w: Sequence[Any], bounds: Optional[RunBounds] = None) -> bool:
    """Breadth-first search over (state, position, stack, pointer) configurations."""
    bounds = bounds or DEFAULT_BOUNDS
    limit = bounds.stack_limit(len(w))
    start = (m.initial, 0, (), -1)
    queue = deque([(start, 0)])
    visited = {start}
    exceeded: Optional[RunBoundsExceeded] = None
    while queue:
        config, silent = queue.popleft()
        state, pos, stack, ptr = config
        if pos == len(w) and state in m.accepting:
            return True
        for target, new_pos, new_stack, new_ptr, consumed in _sa_successors(m, config, w):
            steps = 0 if consumed else silent + 1
            if steps > bounds.max_silent:
                exceeded = RunBoundsExceeded("silent steps", bounds.max_silent, pos)
                continue
            if len(new_stack) > limit:
                exceeded = RunBoundsExceeded("stack height", limit, pos)
                continue
            nxt = (target, new_pos, new_stack, new_ptr)
            if nxt not in visited:
                visited.add(nxt)
                queue.append((nxt, steps))
    if exceeded is not None:
        raise exceeded
    return False


def _sa_successors(m: StackAutomaton, config: Tuple[State, int, Tuple[Hashable, ...], int], w: Sequence[Any]):
    state, pos, stack, ptr = config
    under = stack[ptr] if stack else None
    at_top = ptr == len(stack) - 1
    symbols: List[Any] = [w[pos]] if pos < len(w) else []
    symbols.append(None)
    for symbol in symbols:
        for target, action in m.moves(state, symbol, under, at_top):
            verb = action[0]
            new_stack, new_ptr = stack, ptr
            if verb == PUSH:
                new_stack = stack + (action[1],)
                new_ptr = len(new_stack) - 1
            elif verb == POP:
                new_stack = stack[:-1]
                new_ptr = len(new_stack) - 1
            elif verb == UP:
                new_ptr = ptr + 1
            elif verb == DOWN:
                if ptr == 0:
                    continue
                new_ptr = ptr - 1
            yield target, pos + (symbol is not None), new_stack, new_ptr, symbol is not None


def sa_trace_heights(m: StackAutomaton, w: Sequence[Any], bounds: Optional[RunBounds] = None) -> List[int]:
    """Stack heights right after each consumed symbol along the unique run.

    Only meaningful where ``m`` is deterministic on ``w``.  Silent moves are
    taken until a consuming move becomes available; a consuming move is
    preferred when both exist.
    """
    bounds = bounds or DEFAULT_BOUNDS
    config = (m.initial, 0, (), -1)
    heights: List[int] = []
    silent = 0
    while config[1] < len(w):
        options = list(_sa_successors(m, config, w))
        reading = [o for o in options if o[4]]
        chosen = reading or options
        if not chosen:
            break
        if len({o[:4] for o in chosen}) > 1:
            raise StructureError(f"{m.name} is not deterministic on this input")
        target, pos, stack, ptr, consumed = chosen[0]
        config = (target, pos, stack, ptr)
        if consumed:
            heights.append(len(stack))
            silent = 0
        else:
            silent += 1
            if silent > bounds.max_silent:
                raise RunBoundsExceeded("silent steps", bounds.max_silent, pos)
    return heights


Machine = Union[Fsa, Pda, StackAutomaton]


def machine_accepts(m: Machine, w: Sequence[Any], bounds: Optional[RunBounds] = None) -> bool:
    if isinstance(m, Fsa):
        return fsa_run(m, w)
    if isinstance(m, Pda):
        return pda_run(m, w, bounds)
    return sa_run(m, w, bounds)


def _as_word(symbols: Sequence[Any]) -> Word:
    if all(isinstance(s, str) for s in symbols):
        return "".join(symbols)
    return tuple(symbols)


def enumerate_accepted(m: Machine, maxlen: int, bounds: Optional[RunBounds] = None, cap: int = ENUMERATION_CAP) -> List[Word]:
    """Accepted words of length at most ``maxlen`` in shortlex order.

    Finite automata are explored state-wise with pruning, so only prefixes of
    accepted words are visited.  Deterministic pushdown automata extend only
    the prefixes they can read.  Other machines run on every word.

    Raises:
        ResourceCapError: When more than ``cap`` words would be visited
    """
    out: List[Word] = []
    if isinstance(m, Fsa):
        dist = m.distance_to_accept()
        order = {s: i for i, s in enumerate(m.alphabet)}
        visited = 0

        def walk(current: FrozenSet[State], prefix: List[Any], remaining: int) -> None:
            nonlocal visited
            visited += 1
            if visited > cap:
                raise ResourceCapError(f"enumerating {m.name}", cap)
            if remaining == 0:
                if current & m.accepting:
                    out.append(_as_word(prefix))
                return
            symbols: Set[Any] = set()
            for s in current:
                symbols.update(m.outgoing(s))
            for symbol in sorted(symbols, key=order.__getitem__):
                nxt = m.step(current, symbol)
                if any(dist.get(s, remaining) <= remaining - 1 for s in nxt):
                    prefix.append(symbol)
                    walk(nxt, prefix, remaining - 1)
                    prefix.pop()

        start = frozenset([m.initial])
        for length in range(maxlen + 1):
            if any(dist.get(s, length + 1) <= length for s in start):
                walk(start, [], length)
        return out
    if isinstance(m, Pda) and m.deterministic:
        return _enumerate_deterministic(m, maxlen, bounds or DEFAULT_BOUNDS, cap)
    visited = 0
    for length in range(maxlen + 1):
        for symbols in product(m.alphabet, repeat=length):
            visited += 1
            if visited > cap:
                raise ResourceCapError(f"enumerating {m.name}", cap)
            if machine_accepts(m, symbols, bounds):
                out.append(_as_word(symbols))
    return out


def _dpda_read(m: Pda, state: State, stack: Tuple[Hashable, ...], symbol: Any, bounds: RunBounds) -> Optional[Tuple[State, Tuple[Hashable, ...]]]:
    """Configuration after consuming ``symbol``, or None if the machine blocks."""
    silent = 0
    word = (symbol,)
    while True:
        options = list(_pda_successors(m, state, 0, stack, word))
        if not options:
            return None
        if len(options) > 1:
            raise StructureError(f"{m.name} is flagged deterministic but offers {len(options)} moves")
        state, _, stack, consumed = options[0]
        if consumed:
            return state, stack
        silent += 1
        if silent > bounds.max_silent:
            raise RunBoundsExceeded("silent steps", bounds.max_silent)


def _dpda_accepts_here(m: Pda, state: State, stack: Tuple[Hashable, ...], bounds: RunBounds) -> bool:
    for _ in range(bounds.max_silent + 1):
        if m.is_accepting(state):
            return True
        options = list(_pda_successors(m, state, 0, stack, ()))
        if not options:
            return False
        state, _, stack, _ = options[0]
    raise RunBoundsExceeded("silent steps", bounds.max_silent)


def _enumerate_deterministic(m: Pda, maxlen: int, bounds: RunBounds, cap: int) -> List[Word]:
    out: List[Word] = []
    level: List[Tuple[Tuple[Any, ...], State, Tuple[Hashable, ...]]] = [((), m.initial, ())]
    visited = 0
    for length in range(maxlen + 1):
        for symbols, state, stack in level:
            if _dpda_accepts_here(m, state, stack, bounds):
                out.append(_as_word(symbols))
        if length == maxlen:
            break
        nxt = []
        for symbols, state, stack in level:
            for symbol in m.alphabet:
                config = _dpda_read(m, state, stack, symbol, bounds)
                if config is None:
                    continue
                visited += 1
                if visited > cap:
                    raise ResourceCapError(f"enumerating {m.name}", cap)
                nxt.append((symbols + (symbol,), config[0], config[1]))
        level = nxt
    logger.debug("%s: %d readable prefixes up to length %d", m.name, visited, maxlen)
    return out


# Machine documents

def _labeller(items: Iterable[Hashable], prefix: str) -> Dict[Hashable, str]:
    items = list(dict.fromkeys(items))
    if all(isinstance(i, str) for i in items):
        return {i: i for i in items}
    return {item: f"{prefix}{k}" for k, item in enumerate(items)}


def _symbol_doc(symbol: Any) -> Any:
    if symbol is None or isinstance(symbol, str):
        return symbol
    return list(symbol)


def _symbol_from_doc(symbol: Any) -> Any:
    if isinstance(symbol, list):
        return tuple(symbol)
    return symbol


def machine_document(m: Machine) -> Dict[str, Any]:
    """JSON-ready description with stable ordering.

    Rule-defined pushdown automata are tabulated first.
    """
    if isinstance(m, Pda):
        m = m.tabulate()
    if isinstance(m, Fsa):
        states = _labeller(m.states, "q")
        rows = [
            [states[s], _symbol_doc(sym), sorted(states[t] for t in targets)]
            for (s, sym), targets in m.transitions.items()
        ]
        document: Dict[str, Any] = {"type": "fsa", "pairs": isinstance(m, SyncFsa)}
    elif isinstance(m, Pda):
        states = _labeller(m.state_list(), "q")
        stack = _labeller(m.stack_alphabet, "z")
        rows = [
            [states[s], _symbol_doc(sym), None if top is None else stack[top],
             sorted([states[t], [stack[x] for x in push]] for t, push in moves)]
            for (s, sym, top), moves in m.transitions.items()
        ]
        document = {"type": "pda", "deterministic": m.deterministic, "stack_alphabet": [stack[x] for x in m.stack_alphabet]}
    else:
        states = _labeller(m.states, "q")
        rows = [
            [states[s], _symbol_doc(sym), under, at_top, sorted([states[t], list(action)] for t, action in moves)]
            for (s, sym, under, at_top), moves in m.transitions.items()
        ]
        document = {"type": "sa", "stack_alphabet": list(m.stack_alphabet)}
    rows.sort(key=repr)
    document.update(
        {
            "name": m.name,
            "alphabet": [_symbol_doc(s) for s in m.alphabet],
            "states": sorted(set(states.values())),
            "initial": states[m.initial],
            "accepting": sorted(states[s] for s in states if _accepts_state(m, s)),
            "transitions": rows,
        }
    )
    return document


def _accepts_state(m: Machine, state: State) -> bool:
    if isinstance(m, Pda):
        return m.is_accepting(state)
    return state in m.accepting


def machine_from_document(document: Mapping[str, Any]) -> Machine:
    """Rebuild a machine written by ``machine_document``."""
    alphabet = [_symbol_from_doc(s) for s in document["alphabet"]]
    kind = document["type"]
    name = document.get("name", "")
    if kind == "fsa":
        cls = SyncFsa if document.get("pairs") else Fsa
        table = {(s, _symbol_from_doc(sym)): targets for s, sym, targets in document["transitions"]}
        return cls(alphabet, document["states"], document["initial"], document["accepting"], table, name=name)
    if kind == "pda":
        table = {
            (s, _symbol_from_doc(sym), top): [(t, tuple(push)) for t, push in moves]
            for s, sym, top, moves in document["transitions"]
        }
        return Pda(alphabet, document["stack_alphabet"], document["initial"], document["accepting"],
                   transitions=table, deterministic=document.get("deterministic", False), name=name)
    if kind == "sa":
        table = {
            (s, _symbol_from_doc(sym), under, at_top): [(t, tuple(action)) for t, action in moves]
            for s, sym, under, at_top, moves in document["transitions"]
        }
        return StackAutomaton(alphabet, document["stack_alphabet"], document["states"], document["initial"],
                              document["accepting"], table, name=name)
    raise StructureError(f"unknown machine type {kind!r}")


# Relation audits

class Representation(Protocol):
    """What an audit needs from a representation."""

    name: str
    spec: GroupSpec

    def encode(self, g: WreathElement) -> str:
        ...

    def decode(self, w: str) -> WreathElement:
        ...

    def near_misses(self, u: str) -> Iterable[str]:
        ...


@dataclass
class AuditReport:
    machine_id: str
    generator: str
    checked: int = 0
    maxconvlen: int = 0
    missed: List[Dict[str, str]] = field(default_factory=list)
    spurious: List[Dict[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missed and not self.spurious

    def to_dict(self) -> Dict[str, Any]:
        return {
            "machine": self.machine_id,
            "generator": self.generator,
            "checked": self.checked,
            "maxconvlen": self.maxconvlen,
            "missed": self.missed,
            "spurious": self.spurious,
            "status": STATUS_PASS if self.passed else STATUS_FAIL,
        }


def _accepts_or_note(m: Machine, conv: Tuple[Pair, ...], bounds: Optional[RunBounds]) -> Tuple[bool, Optional[str]]:
    try:
        return machine_accepts(m, conv, bounds), None
    except RunBoundsExceeded as exc:
        return False, str(exc)


def _check_related(rep: Representation, step: WreathElement, u: str, v: str) -> Optional[str]:
    """None when (u, v) is a canonical related pair, otherwise the reason."""
    try:
        g, h = rep.decode(u), rep.decode(v)
    except (WordParseError, StructureError) as exc:
        return f"not a representative: {exc}"
    if rep.encode(g) != u or rep.encode(h) != v:
        return "not canonical"
    if wreath_mul(g, step) != h:
        return "not related by the generator"
    return None


def relation_audit(
    m: Machine,
    rep: Representation,
    gen: str,
    ball: DistanceMap,
    maxconvlen: int,
    bounds: Optional[RunBounds] = None,
) -> AuditReport:
    """Check a multiplier machine against the group on a finite ball.

    Completeness: every pair (g, g*gen) inside the ball must be accepted.
    Soundness: finite automata have every accepted convolution up to
    ``maxconvlen`` decoded and checked; other machines are run on every ball
    element paired with its neighbours, itself and the representation's near
    misses, within the same length limit.

    Returns:
        The report; run-bound exhaustion is listed as a violation
    """
    step = rep.spec.generator(gen)
    report = AuditReport(m.name, gen, maxconvlen=maxconvlen)
    elements = ball.elements()
    encoded = {g: rep.encode(g) for g in elements}
    for g in elements:
        target = wreath_mul(g, step)
        if target not in ball:
            continue
        u, v = encoded[g], encoded[target]
        report.checked += 1
        ok, note = _accepts_or_note(m, convolve(u, v), bounds)
        if not ok:
            report.missed.append({"u": u, "v": v, "reason": note or "rejected"})

    if isinstance(m, Fsa):
        for word in enumerate_accepted(m, maxconvlen):
            report.checked += 1
            if not is_convolution(word):
                report.spurious.append({"word": format_convolution(word), "reason": "malformed convolution"})
                continue
            u, v = deconvolve(word)
            reason = _check_related(rep, step, u, v)
            if reason:
                report.spurious.append({"u": u, "v": v, "reason": reason})
    else:
        neighbours = [s for _, s in rep.spec.steps()]
        for g in elements:
            u = encoded[g]
            related = encoded.get(wreath_mul(g, step))
            candidates = {encoded.get(wreath_mul(g, s)) or rep.encode(wreath_mul(g, s)) for s in neighbours}
            candidates.add(u)
            candidates.update(rep.near_misses(u))
            candidates.discard(related)
            for v in sorted(candidates):
                conv = convolve(u, v)
                if len(conv) > maxconvlen:
                    continue
                report.checked += 1
                ok, note = _accepts_or_note(m, conv, bounds)
                if note:
                    report.spurious.append({"u": u, "v": v, "reason": note})
                elif ok:
                    reason = _check_related(rep, step, u, v)
                    if reason:
                        report.spurious.append({"u": u, "v": v, "reason": reason})
    logger.info("audit %s/%s: %d pairs, %d missed, %d spurious",
                m.name, gen, report.checked, len(report.missed), len(report.spurious))
    return report
