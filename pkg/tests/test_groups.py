import json

import pytest

from wreath.errors import BallTooLargeError, LiteralParseError, StructureError
from wreath.groups import (
    BaseKind,
    DistanceMap,
    FreeWord,
    bfs_ball,
    embed_lamplighter,
    format_element,
    free_branch,
    free_reduce,
    identity_element,
    make_element,
    parse_element,
    word_length,
    wreath_inv,
    wreath_mul,
)
from wreath.rep_z import gz_spec


def z(lamps, pos):
    return make_element(BaseKind.Z, "Z2", {p: 1 for p in lamps}, pos)


def test_free_reduce():
    assert free_reduce(["a", "b", "b-1"]) == FreeWord("a")
    assert free_reduce([]) == FreeWord()
    assert free_reduce(["a", "a-1", "a"]) == FreeWord("a")
    assert free_reduce("aBba") == FreeWord("aa")
    with pytest.raises(StructureError):
        free_reduce(["c"])


def test_free_word_helpers():
    w = FreeWord("aB")
    assert str(w) == "ab-1"
    assert w.inverse() == FreeWord("bA")
    assert w * w.inverse() == FreeWord()
    assert free_branch(FreeWord("Ba")) == "b"
    assert free_branch(FreeWord()) == "e"


def test_wreath_mul_examples(ll):
    a, h = ll.generator("a"), ll.generator("h")
    e = ll.identity
    assert wreath_mul(e, e) == e
    assert wreath_mul(a, h) == z([1], 1)
    assert wreath_mul(h, a) == z([0], 1)
    assert wreath_mul(h, h) == e


def test_wreath_inv_examples(ll):
    assert wreath_inv(ll.identity) == ll.identity
    assert wreath_inv(ll.generator("a")) == z([], -1)
    assert wreath_inv(z([1], 1)) == z([0], -1)


def test_mixed_groups_rejected(ll, grid):
    with pytest.raises(StructureError):
        wreath_mul(ll.identity, grid.identity)


def test_group_laws_on_small_balls(ll, f2, grid):
    for spec in (ll, f2, grid):
        ball = bfs_ball(spec, 2)
        elements = ball.elements()
        for x in elements:
            assert wreath_mul(x, wreath_inv(x)) == spec.identity
            assert wreath_inv(wreath_inv(x)) == x
            for y in elements[:12]:
                for s in elements[:6]:
                    assert wreath_mul(wreath_mul(x, y), s) == wreath_mul(x, wreath_mul(y, s))


def test_bfs_ball_examples(ll):
    assert bfs_ball(ll, 0).entries == {ll.identity: 0}
    ball = bfs_ball(ll, 1)
    assert {format_element(g): d for g, d in ball.entries.items()} == {
        "pos=0;lamps=": 0,
        "pos=0;lamps=0": 1,
        "pos=1;lamps=": 1,
        "pos=-1;lamps=": 1,
    }
    assert bfs_ball(ll, 3).distance(z([1], 0)) == 3


def test_bfs_ball_neighbours_differ_by_one(ll_ball, ll):
    steps = [s for _, s in ll.steps()]
    for g in ll_ball.within(4):
        for s in steps:
            assert abs(ll_ball.distance(wreath_mul(g, s)) - ll_ball.distance(g)) <= 1


def test_bfs_ball_cap(grid):
    with pytest.raises(BallTooLargeError) as info:
        bfs_ball(grid, 4, cap=50)
    assert info.value.cap == 50


def test_word_length(ll, grid):
    assert word_length(ll, z([1], 0)) == 3
    assert word_length(grid, make_element(BaseKind.GRID, "Z2", {(0, -2): 1}, (0, 0))) == 5
    assert word_length(ll, ll.identity) == 0


def test_literals_round_trip(ll_ball, f2_ball, grid_ball, ll, f2, grid):
    for spec, ball in ((ll, ll_ball), (f2, f2_ball), (grid, grid_ball)):
        for g in ball.elements():
            assert parse_element(format_element(g), spec) == g


def test_literal_forms(f2, z_pres):
    g = parse_element("pos=ab-1;lamps=e,b", f2)
    assert g.pos == FreeWord("aB")
    assert g.support == [FreeWord(), FreeWord("b")]
    zz = gz_spec(z_pres)
    h = parse_element("pos=2;lamps=-1:3,0:-5", zz)
    assert h.lamp_map == {-1: 3, 0: -5}
    assert format_element(h) == "pos=2;lamps=-1:3,0:-5"


@pytest.mark.parametrize(
    "text, position",
    [
        ("pos=x;lamps=", 4),
        ("lamps=;pos=0", 0),
        ("pos=0;lamps=1,", 14),
        ("pos=0;lamps=1,1", 14),
    ],
)
def test_literal_errors(ll, text, position):
    with pytest.raises(LiteralParseError) as info:
        parse_element(text, ll)
    assert info.value.position == position


def test_embed_lamplighter(ll):
    g = z([-1, 2], 3)
    image = embed_lamplighter(g)
    assert image.base == BaseKind.F2
    assert image.support == [FreeWord("A"), FreeWord("aa")]
    assert image.pos == FreeWord("aaa")
    h = embed_lamplighter(ll.generator("h"))
    assert h.support == [FreeWord()]


def test_distance_map_disk(tmp_path, ll):
    ball = bfs_ball(ll, 2)
    path = tmp_path / "ball.json"
    ball.save_to_disk(str(path))
    assert json.loads(path.read_text())
    loaded = DistanceMap.load_from_disk(str(path), ll)
    assert loaded is not None
    assert loaded.entries == ball.entries
    assert DistanceMap.load_from_disk(str(tmp_path / "missing.json"), ll) is None


def test_identity_element():
    assert identity_element(BaseKind.GRID).pos == (0, 0)
    assert identity_element(BaseKind.F2).is_identity()
