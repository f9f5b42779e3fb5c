"""Named membership rules for bracketed Z2 wr F2 words.

Each rule checks one property a representative must have and returns the
position of the first violation, or None.  The canonical language is the
image of the encoder; ``rule_gaps`` lists words where the two disagree.
"""

import logging
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .bracket_logic import CLOSE, OPEN, SYMBOLS

logger = logging.getLogger(__name__)

RuleChecker = Callable[[str], Optional[int]]

_RULES: Dict[str, RuleChecker] = {}

# symbols the marker rule counts, by marker class
A_SYMBOLS = set("AaPp")
B_SYMBOLS = set("BbQq")
C_SYMBOLS = set("CcRrSs")
BASIC_INNER = set("01Cc")


def add_rule(name: str, checker: RuleChecker) -> None:
    """Registers a rule under a name."""
    _RULES[name] = checker


def rule_names() -> List[str]:
    return list(_RULES)


def check_rules(word: str) -> Dict[str, Optional[int]]:
    """Run every rule; values are violation positions (None when satisfied)."""
    return {name: checker(word) for name, checker in _RULES.items()}


def satisfies_rules(word: str) -> bool:
    return all(position is None for position in check_rules(word).values())


def _matches(word: str) -> Optional[List[Tuple[int, int]]]:
    """Matched bracket pairs as (open, close) positions, or None if unbalanced."""
    stack: List[int] = []
    pairs = []
    for i, c in enumerate(word):
        if c in OPEN:
            stack.append(i)
        elif c in CLOSE:
            if not stack or OPEN[word[stack[-1]]] != CLOSE[c]:
                return None
            pairs.append((stack.pop(), i))
    return None if stack else pairs


def _direct(word: str, start: int, end: int) -> List[int]:
    """Positions strictly inside (start, end) at nesting depth zero."""
    depth = 0
    out = []
    for i in range(start + 1, end):
        c = word[i]
        if c in OPEN:
            depth += 1
        elif c in CLOSE:
            depth -= 1
        elif depth == 0:
            out.append(i)
    return out


def bracket_grammar(word: str) -> Optional[int]:
    """S -> SS | (T) | e and T -> TT | [S] | e on the bracket projection."""
    stack: List[str] = []
    for i, c in enumerate(word):
        if c == "(":
            if stack and stack[-1] != "[":
                return i
            stack.append(c)
        elif c == "[":
            if not stack or stack[-1] != "(":
                return i
            stack.append(c)
        elif c in CLOSE:
            if not stack or OPEN[stack.pop()] != CLOSE[c]:
                return i
    return len(word) if stack else None


def _anchored(bracket: str, anchors: str) -> RuleChecker:
    def check(word: str) -> Optional[int]:
        pairs = _matches(word)
        if pairs is None:
            return None
        for start, end in pairs:
            if word[start] != bracket:
                continue
            inside = _direct(word, start, end)
            found = [i for i in inside if word[i] in anchors]
            if len(found) != 1:
                return start
            for i in inside:
                if i != found[0] and word[i] not in BASIC_INNER:
                    return i
        return None

    return check


def origin_anchor_first_level(word: str) -> Optional[int]:
    depth = 0
    for i, c in enumerate(word):
        if c in OPEN:
            depth += 1
        elif c in CLOSE:
            depth -= 1
        elif c in "PpQq" and depth != 1:
            return i
    return None


def separated(word: str) -> Optional[int]:
    pairs = _matches(word) or []
    for start, end in pairs:
        if end - start - 1 < 2:
            return start
    return None


def no_zero_at_brackets(word: str) -> Optional[int]:
    for i in range(len(word) - 1):
        pair = word[i:i + 2]
        if pair in ("(0", "[0", "0)", "0]"):
            return i
    return None


def no_zero_at_ends(word: str) -> Optional[int]:
    if word.startswith("0"):
        return 0
    if word.endswith("0"):
        return len(word) - 1
    return None


def marker_counts(word: str) -> Optional[int]:
    a = [i for i, c in enumerate(word) if c in A_SYMBOLS]
    b = [i for i, c in enumerate(word) if c in B_SYMBOLS]
    c = [i for i, c in enumerate(word) if c in C_SYMBOLS]
    if (len(b), len(a), len(c)) in ((1, 0, 0), (0, 1, 1)):
        return None
    extra = sorted(a + b + c)
    return extra[-1] if extra else len(word)


def known_symbols(word: str) -> Optional[int]:
    for i, c in enumerate(word):
        if c not in SYMBOLS and c not in OPEN and c not in CLOSE:
            return i
    return None


add_rule("known_symbols", known_symbols)
add_rule("bracket_grammar", bracket_grammar)
add_rule("paren_anchor", _anchored("(", "DdPpQqRr"))
add_rule("square_anchor", _anchored("[", "EeSs"))
add_rule("origin_anchor_first_level", origin_anchor_first_level)
add_rule("separated", separated)
add_rule("no_zero_at_brackets", no_zero_at_brackets)
add_rule("no_zero_at_ends", no_zero_at_ends)
add_rule("marker_counts", marker_counts)


def rule_gaps(words: Iterable[str], canonical: Callable[[str], bool]) -> List[Tuple[str, bool, bool]]:
    """Words on which the rules and the canonical test disagree.

    Returns:
        (word, rules verdict, canonical verdict) triples
    """
    gaps = []
    for w in words:
        by_rules, by_encoder = satisfies_rules(w), canonical(w)
        if by_rules != by_encoder:
            gaps.append((w, by_rules, by_encoder))
    if gaps:
        logger.info("%d words separate the rules from the encoder image", len(gaps))
    return gaps
