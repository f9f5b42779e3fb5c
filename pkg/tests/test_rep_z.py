import pytest

from wreath.automata import convolve, relation_audit
from wreath.constants import EXPORT_STATE_CAP
from wreath.errors import StructureError, WordParseError
from wreath.groups import BaseKind, bfs_ball, make_element, wreath_mul
from wreath.presentations import z_decode, z_encode
from wreath.rep_z import (
    GzRepresentation,
    LlRepresentation,
    gz_constants,
    gz_decode,
    gz_encode,
    gz_mult_fsa,
    gz_spec,
    gz_to_ll,
    ll_bounds_check,
    ll_decode,
    ll_encode,
    ll_language_fsa,
    ll_length,
    ll_mult_fsa,
    ll_normal_form,
    ll_step_property,
    ll_word_length,
    span_frame,
)


def z(lamps, pos):
    return make_element(BaseKind.Z, "Z2", {p: 1 for p in lamps}, pos)


def zz(lamps, pos):
    return make_element(BaseKind.Z, "Z", lamps, pos)


def test_ll_encode_examples(ll):
    assert ll_encode(ll.identity) == "B"
    assert ll_encode(z([], 2)) == "A0C"
    assert ll_encode(z([-1, 1], 1)) == "1Ac"
    assert ll_encode(ll.generator("h")) == "b"


def test_ll_decode_examples(ll):
    assert ll_decode("B") == ll.identity
    assert ll_decode("A0C") == z([], 2)
    assert ll_decode("c1A") == z([-2, -1], -2)


@pytest.mark.parametrize(
    "word, position",
    [("", 0), ("0B", 0), ("BB", 1), ("A", 1), ("Bx", 1), ("B0", 1), ("CA0", 2)],
)
def test_ll_decode_errors(word, position):
    with pytest.raises(WordParseError) as info:
        ll_decode(word)
    assert info.value.position == position


def test_ll_encode_rejects_other_groups(grid):
    with pytest.raises(StructureError):
        ll_encode(grid.identity)


def test_ll_round_trip_and_length(ll_ball):
    for g in ll_ball.elements():
        w = ll_encode(g)
        assert ll_decode(w) == g
        frame = span_frame(g)
        assert len(w) == frame.r - frame.l + 1 == ll_word_length(g)
        assert ll_length(g) == ll_ball.distance(g)


def test_ll_length_examples(ll):
    assert ll_length(ll.identity) == 0
    assert ll_length(ll.generator("h")) == 1
    assert ll_length(z([-1, 1], 0)) == 6


def test_ll_normal_form(ll, ll_ball):
    assert ll_normal_form(ll.identity) == ((), ())
    assert ll_normal_form(ll.generator("h")) == (("h",), ("h",))
    assert ll_normal_form(z([1], 0)) == (("a", "h", "a-1"), ("a", "h", "a-1"))
    for g in ll_ball.within(4):
        first, second = ll_normal_form(g)
        assert ll.evaluate(first) == g
        assert ll.evaluate(second) == g
        assert min(len(first), len(second)) == ll_length(g)


def test_ll_step_property(ll_ball):
    assert all(ll_step_property(g) for g in ll_ball.elements())


def test_ll_language_fsa():
    m = ll_language_fsa()
    assert m.accepts("B")
    assert m.accepts("1Ac")
    assert not m.accepts("0B")
    assert not m.accepts("B0")
    assert not m.accepts("AA")
    assert not m.accepts("")


def test_ll_mult_fsa_examples(ll):
    a, h = ll_mult_fsa("a"), ll_mult_fsa("h")
    assert a.accepts(convolve("B", "AC"))
    assert not a.accepts(convolve("B", "B"))
    assert ll_mult_fsa("a-1").accepts(convolve("AC", "B"))
    g = z([-1, 1], 1)
    assert h.accepts(convolve(ll_encode(g), ll_encode(wreath_mul(g, ll.generator("h")))))
    assert h.accepts(convolve("1Ac", "1AC"))
    with pytest.raises(StructureError):
        ll_mult_fsa("b")


@pytest.mark.parametrize("gen", ["a", "a-1", "h"])
def test_ll_mult_fsa_builds(gen):
    m = ll_mult_fsa(gen)
    assert 0 < len(m.states) < EXPORT_STATE_CAP
    assert m.accepts(convolve("B", {"a": "AC", "a-1": "CA", "h": "b"}[gen]))


@pytest.mark.parametrize("gen", ["a", "a-1", "h"])
def test_ll_mult_fsa_audit(ll, gen):
    report = relation_audit(ll_mult_fsa(gen), LlRepresentation(), gen, bfs_ball(ll, 4), 6)
    assert report.passed, report.to_dict()


def test_ll_bounds(ll, ll_ball):
    assert ll_bounds_check(bfs_ball(ll, 0)).passed
    report = ll_bounds_check(ll_ball)
    assert report.passed
    assert report.lower_witnesses
    assert report.upper_witnesses
    for k in range(1, 5):
        assert len(ll_encode(z([], k))) == k + 1
        assert ll_length(z([], k)) == k


def test_z_binary_words():
    assert [z_encode(n) for n in (0, 1, 2, 3, -1, -2, -5)] == ["0", "01", "001", "011", "1", "11", "1001"]
    for n in range(-40, 40):
        assert z_decode(z_encode(n)) == n
    with pytest.raises(WordParseError):
        z_decode("010")


def test_z_increment_machine(z_pres):
    machine = z_pres.generator_fsa("g1")
    for n in range(-40, 40):
        assert machine.accepts(convolve(z_encode(n), z_encode(n + 1)))
        assert not machine.accepts(convolve(z_encode(n), z_encode(n + 2)))
    assert z_pres.generator_fsa("g1-1").accepts(convolve("01", "0"))


def test_gz_encode_examples(z_pres):
    g = zz({-1: 3, 0: -5, 1: 1, 2: -4}, 1)
    assert gz_encode(z_pres, g) == "u11a001C1U11"
    assert gz_decode(z_pres, "u11a001C1U11") == g
    assert gz_encode(z_pres, zz({}, 0)) == "B"
    assert gz_encode(z_pres, zz({0: 1}, 0)) == "B1"


def test_gz_decode_errors(z_pres):
    with pytest.raises(WordParseError) as info:
        gz_decode(z_pres, "B00")
    assert info.value.unit == "cell"
    with pytest.raises(WordParseError) as info:
        gz_decode(z_pres, "uB")
    assert (info.value.unit, info.value.position) == ("cell", 0)
    with pytest.raises(WordParseError) as info:
        gz_decode(z_pres, "1B")
    assert (info.value.unit, info.value.position) == ("symbol", 0)
    with pytest.raises(WordParseError):
        gz_decode(z_pres, "BA")


def test_gz_z2_matches_lamplighter(z2_pres, ll_ball):
    for g in ll_ball.within(4):
        w = gz_encode(z2_pres, g)
        assert gz_to_ll(w) == ll_encode(g)
        assert gz_decode(z2_pres, w) == g


def test_gz_round_trip(zz_ball, z_pres):
    for g in zz_ball.elements():
        assert gz_decode(z_pres, gz_encode(z_pres, g)) == g


def test_gz_mult_fsa_examples(z_pres, z2_pres):
    g1 = gz_mult_fsa(z_pres, "g1")
    assert g1.accepts(convolve("B", "B1"))
    for G in (z_pres, z2_pres):
        a = gz_mult_fsa(G, "a")
        assert not a.accepts(convolve("B", "B"))
        assert a.accepts(convolve("B", "AC"))
    with pytest.raises(StructureError):
        gz_mult_fsa(z2_pres, "h-1")
    with pytest.raises(StructureError):
        gz_mult_fsa(z_pres, "h")


@pytest.mark.parametrize("gens", [("z", ["a", "a-1", "g1", "g1-1"]), ("z2", ["a", "a-1", "h"])])
def test_gz_mult_fsa_builds(z_pres, z2_pres, gens):
    name, names = gens
    G = z_pres if name == "z" else z2_pres
    for gen in names:
        assert 0 < len(gz_mult_fsa(G, gen).states) < EXPORT_STATE_CAP


@pytest.mark.parametrize("gen", ["a", "a-1", "g1", "g1-1"])
def test_gz_z_audit(z_pres, gen):
    ball = bfs_ball(gz_spec(z_pres), 3)
    report = relation_audit(gz_mult_fsa(z_pres, gen), GzRepresentation(z_pres), gen, ball, 5)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("gen", ["a", "h"])
def test_gz_z2_audit(z2_pres, ll, gen):
    report = relation_audit(gz_mult_fsa(z2_pres, gen), GzRepresentation(z2_pres), gen, bfs_ball(ll, 3), 5)
    assert report.passed, report.to_dict()


def test_gz_constants(z2_pres, z_pres, zz_ball):
    c = gz_constants(z2_pres)
    assert (c.identity_length, c.padding, c.K) == (1, {"h": 0}, 1)
    d = gz_constants(z_pres, ball=zz_ball)
    assert d.identity_length == 1
    assert d.padding == {"g1": 1, "g1-1": 1}
    assert d.K == 1
    assert d.report is not None and d.report.passed
    assert d.to_dict()["K0"] == 1
