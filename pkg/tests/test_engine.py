from wreath.automata import SymbolTable, convolve, pda_run
from wreath.bracket_tree import f2_tree, from_syllables, linearize, parse_tree, syllables, tree_element
from wreath.engine import END, Compiler, Step, TapeLogic
from wreath.groups import FreeWord

BITS = SymbolTable("bits", (("0", "0"), ("1", "1")))


class CopyLogic(TapeLogic):
    """Accepts u (x) u."""

    def steps(self, state, uq, vq):
        if state != "start" or not uq or not vq:
            return
        if uq[0] == vq[0] == END:
            yield Step("done", 1, 1)
        elif uq[0] == vq[0]:
            yield Step("start", 1, 1)

    def accepting(self, state):
        return state == "done"


def test_copy_logic_as_fsa():
    m = Compiler(CopyLogic(), BITS.pairs(), "copy").fsa()
    assert m.accepts(convolve("0110", "0110"))
    assert m.accepts(())
    assert not m.accepts(convolve("01", "0"))
    assert not m.accepts(convolve("01", "00"))


def test_fsa_drops_dead_controls():
    m = Compiler(CopyLogic(), BITS.pairs(), "copy").fsa()
    assert len(m.states) == 3
    assert not m.accepts(convolve("0", "1"))


def test_copy_logic_as_pda():
    m = Compiler(CopyLogic(), BITS.pairs(), "copy").pda()
    assert pda_run(m, convolve("101", "101"))
    assert not pda_run(m, convolve("101", "10"))


def test_syllables():
    assert syllables(FreeWord("aab")) == [2, 1]
    assert syllables(FreeWord("b")) == [0, 1]
    assert syllables(FreeWord()) == [0]
    assert syllables(FreeWord("aBA")) == [1, -1, -1]
    for letters in ("aab", "b", "aBA", "BBab"):
        assert from_syllables(syllables(FreeWord(letters))) == FreeWord(letters)


def test_trees(f2_ball):
    for g in f2_ball.within(2):
        if g.is_identity():
            continue
        w = linearize(f2_tree(g))
        assert tree_element(parse_tree(w)) == g
