"""Subsidiary groups G given by binary representatives, for G wr Z.

A presentation bundles the language L_G of representatives, the bijection
between L_G and G, and one synchronous automaton per generator.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from .automata import Fsa, SyncFsa, SymbolTable
from .errors import WordParseError
from .groups import lamp_ops

BITS = SymbolTable("bits", (("0", "0"), ("1", "1")))


@dataclass
class GPresentation:
    """A group G with representatives in {0,1}^+.

    Args:
        name: Short name used in selectors, e.g. "z2"
        lamp_group: Registered lamp group whose arithmetic matches G
        identity_word: Representative of the identity
        language: Single-tape automaton for L_G
        encode: G element to word
        decode: Word to G element; raises WordParseError outside L_G
        generators: Generator name to (G element, multiplier automaton)
    """

    name: str
    lamp_group: str
    identity_word: str
    language: Fsa
    encode: Callable[[Any], str]
    decode: Callable[[str], Any]
    generators: Dict[str, Tuple[Any, SyncFsa]] = field(default_factory=dict)

    def accepts(self, word: str) -> bool:
        return bool(word) and self.language.accepts(word)

    def generator_fsa(self, name: str) -> SyncFsa:
        """Multiplier automaton for a generator or, with suffix -1, its inverse."""
        if name.endswith("-1") and name[:-2] in self.generators:
            return self.generators[name[:-2]][1].transpose(f"{self.name}:{name}")
        return self.generators[name][1]

    def generator_names(self) -> List[str]:
        out = []
        for name, (value, _) in self.generators.items():
            out.append(name)
            if self.lamp_inverse_differs(value):
                out.append(name + "-1")
        return out

    def lamp_inverse_differs(self, value: Any) -> bool:
        return lamp_ops(self.lamp_group).inv(value) != value


def _z2_decode(word: str) -> int:
    if word not in ("0", "1"):
        raise WordParseError(word, 0, "not a Z2 representative")
    return int(word)


def z2_presentation() -> GPresentation:
    language = Fsa(BITS.codes, ["s", "t"], "s", ["t"], {("s", "0"): ["t"], ("s", "1"): ["t"]}, name="z2:L")
    flip = SyncFsa(BITS.pairs(), ["s", "t"], "s", ["t"], {("s", ("0", "1")): ["t"], ("s", ("1", "0")): ["t"]}, name="z2:h")
    return GPresentation("z2", "Z2", "0", language, lambda v: str(v % 2), _z2_decode, {"h": (1, flip)})


def _lsb(m: int) -> str:
    out = []
    while m:
        out.append(str(m & 1))
        m >>= 1
    return "".join(out)


def z_encode(n: int) -> str:
    """Sign bit, then the magnitude least significant bit first.

    Negative n stores -n - 1, so every word is canonical when it has no
    trailing zero after the sign bit.
    """
    if n >= 0:
        return "0" + _lsb(n)
    return "1" + _lsb(-n - 1)


def z_decode(word: str) -> int:
    if not word:
        raise WordParseError(word, 0, "empty word")
    for i, c in enumerate(word):
        if c not in "01":
            raise WordParseError(word, i, "not a bit")
    if len(word) > 1 and word[-1] == "0":
        raise WordParseError(word, len(word) - 1, "trailing zero")
    magnitude = sum(1 << k for k, c in enumerate(word[1:]) if c == "1")
    return magnitude if word[0] == "0" else -magnitude - 1


def _z_language() -> Fsa:
    table = {
        ("init", "0"): ["sign"], ("init", "1"): ["sign"],
        ("sign", "0"): ["zero"], ("sign", "1"): ["one"],
        ("one", "0"): ["zero"], ("one", "1"): ["one"],
        ("zero", "0"): ["zero"], ("zero", "1"): ["one"],
    }
    return Fsa(BITS.codes, ["init", "sign", "one", "zero"], "init", ["sign", "one"], table, name="z:L")


def _z_increment() -> SyncFsa:
    """u (x) v with v = u + 1, reading carries from the least significant bit."""
    table: Dict[Tuple[str, Tuple[str, str]], List[str]] = {
        ("init", ("0", "0")): ["carry"],
        ("init", ("1", "0")): ["done"],
        ("init", ("1", "1")): ["borrow"],
        ("carry", ("1", "0")): ["carry"],
        ("carry", ("0", "1")): ["u_zero"],
        ("carry", ("#", "1")): ["done"],
        ("borrow", ("0", "1")): ["borrow"],
        ("borrow", ("1", "0")): ["v_zero"],
        ("borrow", ("1", "#")): ["done"],
    }
    for state in ("u_zero", "v_zero", "eq_zero", "eq_one"):
        table[(state, ("0", "0"))] = ["eq_zero"]
        table[(state, ("1", "1"))] = ["eq_one"]
    states = ["init", "carry", "borrow", "done", "u_zero", "v_zero", "eq_zero", "eq_one"]
    return SyncFsa(BITS.pairs(), states, "init", ["done", "eq_one"], table, name="z:g1")


def z_presentation() -> GPresentation:
    return GPresentation("z", "Z", "0", _z_language(), z_encode, z_decode, {"g1": (1, _z_increment())})


PRESENTATIONS: Dict[str, Callable[[], GPresentation]] = {
    "z2": z2_presentation,
    "z": z_presentation,
}
