import pytest

from wreath.automata import convolve, pda_run, relation_audit
from wreath.errors import StructureError, WordParseError
from wreath.groups import BaseKind, FreeWord, bfs_ball, embed_lamplighter, make_element, wreath_mul
from wreath.language_rules import bracket_grammar
from wreath.rep_f2 import (
    IDENTITY_WORD,
    REFERENCE_WORDS,
    F2Representation,
    f2_bounds_check,
    f2_decode,
    f2_encode,
    f2_is_canonical,
    f2_language_pda,
    f2_mult_pda,
    f2_step_property,
    light_relocations,
)
from wreath.rep_z import ll_encode


def at(letters, lamps=()):
    return make_element(BaseKind.F2, "Z2", {FreeWord(p): 1 for p in lamps}, FreeWord(letters))


def test_identity_word(f2):
    assert IDENTITY_WORD == "A"
    assert f2_encode(f2.identity) == "A"
    assert f2_decode("A") == f2.identity


def test_reference_words():
    for w in REFERENCE_WORDS:
        g = f2_decode(w)
        assert f2_encode(g) == w
        assert bracket_grammar(w) is None


def test_lamplighter_moves_along_a(f2):
    assert f2_encode(at("a")) == "AC"
    assert f2_decode("AC") == at("a")


def test_round_trip_on_ball(f2_ball):
    for g in f2_ball.elements():
        w = f2_encode(g)
        assert f2_decode(w) == g
        assert bracket_grammar(w) is None


@pytest.mark.parametrize("word", ["0A", "A0", "(D)A", "AA", "", "A)"])
def test_non_canonical_words(word):
    assert not f2_is_canonical(word)
    with pytest.raises(WordParseError):
        f2_decode(word)


def test_language_pda():
    m = f2_language_pda()
    assert m.deterministic
    assert pda_run(m, "A")
    for w in REFERENCE_WORDS:
        assert pda_run(m, w)
    assert not pda_run(m, "0A")
    assert not pda_run(m, "(D)A")


def test_language_pda_matches_encoder(f2_ball):
    m = f2_language_pda()
    for g in f2_ball.within(2):
        w = f2_encode(g)
        assert pda_run(m, w)
        for v in light_relocations(w):
            assert pda_run(m, v) == f2_is_canonical(v)


def test_mult_pda_examples(f2):
    a, h = f2.generator("a"), f2.generator("h")
    assert pda_run(f2_mult_pda("a"), convolve("A", "AC"))
    assert not pda_run(f2_mult_pda("a"), convolve("A", "A"))
    assert pda_run(f2_mult_pda("h"), convolve(f2_encode(a), f2_encode(wreath_mul(a, h))))
    b_word = f2_encode(f2.generator("b"))
    assert "(" in b_word
    assert pda_run(f2_mult_pda("b"), convolve("A", b_word))
    assert pda_run(f2_mult_pda("b-1"), convolve(b_word, "A"))
    with pytest.raises(StructureError):
        f2_mult_pda("h-1")
    with pytest.raises(StructureError):
        f2_mult_pda("c")


def test_h_pda_keeps_segments(f2):
    h = f2.generator("h")
    u, v = "([CE]P)", "(CP)"
    assert f2_is_canonical(u) and f2_is_canonical(v)
    assert wreath_mul(f2_decode(u), h) != f2_decode(v)
    assert not pda_run(f2_mult_pda("h"), convolve(u, v))
    assert pda_run(f2_mult_pda("h"), convolve(u, f2_encode(wreath_mul(f2_decode(u), h))))


@pytest.mark.parametrize("gen", ["h", "a", "a-1", "b", "b-1"])
def test_mult_pda_audit(f2, gen):
    report = relation_audit(f2_mult_pda(gen), F2Representation(), gen, bfs_ball(f2, 2), 8)
    assert report.passed, report.to_dict()


def test_bounds(f2, f2_ball):
    report = f2_bounds_check(bfs_ball(f2, 0))
    assert report.passed
    report = f2_bounds_check(f2_ball)
    assert report.passed
    assert report.lower_witnesses
    assert report.upper_witnesses


def test_step_property(f2_ball):
    assert all(f2_step_property(g) for g in f2_ball.elements())


def test_lamplighter_subgroup(ll_ball):
    for g in ll_ball.within(4):
        if not g.is_identity():
            assert f2_encode(embed_lamplighter(g)) == ll_encode(g)


def test_light_relocations():
    assert list(light_relocations("AC")) == ["B0"]
    assert all(w != "AC" for w in light_relocations("1AC1"))
