import pytest

from wreath.automata import convolve, relation_audit, sa_run
from wreath.errors import StructureError, WordParseError
from wreath.groups import BaseKind, bfs_ball, make_element, word_length, wreath_mul
from wreath.rep_grid import (
    REFERENCE_WORD,
    GridRepresentation,
    c_relocations,
    grid_bounds_check,
    grid_decode,
    grid_encode,
    grid_h_fsa,
    grid_is_canonical,
    grid_language_fsa,
    grid_mult_machine,
    grid_shift,
    grid_x_sa,
    grid_y_sa,
    phase_one_heights,
    single_lamp_length,
    spiral,
    spiral_inv,
    spiral_walk,
    witness_element,
    witness_family,
)
from wreath.utils import ceil_sqrt


def cell(pos, lamps=()):
    return make_element(BaseKind.GRID, "Z2", {p: 1 for p in lamps}, pos)


def test_spiral_head():
    assert [spiral(k) for k in range(1, 10)] == [
        (0, 0), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
    ]
    assert spiral(23) == (0, -2)
    with pytest.raises(StructureError):
        spiral(0)


def test_spiral_inverse():
    assert spiral_inv((0, 0)) == 1
    assert spiral_inv((0, -2)) == 23
    assert spiral_inv((3, 0)) == 28
    walked = list(spiral_walk(2000))
    assert walked == [spiral(k) for k in range(1, 2001)]
    assert all(spiral_inv(p) == k for k, p in enumerate(walked, 1))
    assert list(spiral_walk(0)) == []


def test_grid_shift():
    assert grid_shift(1, "x") == 2
    assert grid_shift(2, "x") == 11
    assert grid_shift(6, "x") == 1
    assert grid_shift(1, "y") == 4
    assert grid_shift(2, "x-1") == 1
    with pytest.raises(StructureError):
        grid_shift(1, "z")


def test_x_offsets():
    for k in range(1, 3000):
        other = grid_shift(k, "x")
        jump = abs(other - k)
        assert jump == 1 or jump == 4 * ceil_sqrt(min(k, other)) + 1


def test_encode_examples(grid):
    assert grid_encode(grid.identity) == "C"
    assert grid_encode(grid.generator("h")) == "c"
    assert grid_encode(cell((0, 0), [(1, 1)])) == "C01"
    assert grid_encode(cell((1, 0))) == "0C"
    assert grid_decode("C01") == cell((0, 0), [(1, 1)])


def test_reference_word():
    g = grid_decode(REFERENCE_WORD)
    assert g.pos == (0, -2)
    assert (0, -2) in g.support
    assert grid_encode(g) == REFERENCE_WORD


@pytest.mark.parametrize(
    "word, position",
    [("", 0), ("0x", 1), ("00", 2), ("CC", 1), ("C0", 1), ("1c10", 3)],
)
def test_decode_errors(word, position):
    with pytest.raises(WordParseError) as info:
        grid_decode(word)
    assert info.value.position == position
    assert not grid_is_canonical(word)


def test_round_trip(grid_ball):
    for g in grid_ball.elements():
        assert grid_decode(grid_encode(g)) == g


def test_language_fsa(grid_ball):
    m = grid_language_fsa()
    assert m.accepts("C")
    assert m.accepts("0c01")
    assert not m.accepts("C0")
    assert not m.accepts("00")
    assert not m.accepts("")
    for g in grid_ball.within(2):
        assert m.accepts(grid_encode(g))


def test_h_fsa(grid_ball, grid):
    m = grid_h_fsa()
    assert m.accepts(convolve("C", "c"))
    assert not m.accepts(convolve("C", "C"))
    h = grid.generator("h")
    for g in grid_ball.within(2):
        assert m.accepts(convolve(grid_encode(g), grid_encode(wreath_mul(g, h))))


def test_x_machine_examples():
    m = grid_x_sa()
    assert sa_run(m, convolve("C", "0C"))
    assert sa_run(m, convolve("0C", "0000000000C"))
    assert not sa_run(m, convolve("C", "C"))
    assert not sa_run(m, convolve("C", "000C"))


def test_y_machine_examples():
    m = grid_y_sa()
    assert sa_run(m, convolve("C", "000C"))
    assert sa_run(m, convolve("0C", "00C"))
    assert not sa_run(m, convolve("C", "0C"))


def test_inverse_machines_are_transposes():
    assert sa_run(grid_mult_machine("x-1"), convolve("0C", "C"))
    assert sa_run(grid_mult_machine("y-1"), convolve("000C", "C"))
    with pytest.raises(StructureError):
        grid_mult_machine("h-1")


@pytest.mark.parametrize("gen", ["h", "x", "x-1", "y", "y-1"])
def test_machine_audit(grid, gen):
    report = relation_audit(grid_mult_machine(gen), GridRepresentation(), gen, bfs_ball(grid, 2), 14)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("gen", ["y", "y-1"])
def test_y_machine_audit_at_radius_four(grid, gen):
    report = relation_audit(grid_mult_machine(gen), GridRepresentation(), gen, bfs_ball(grid, 4), 30)
    assert report.passed, report.to_dict()
    assert report.checked > 0


def test_machine_accepts_long_jumps(grid):
    x, y = grid.generator("x"), grid.generator("y")
    for k in range(1, 50):
        g = cell(spiral(k), [(2, -1)])
        for step, machine in ((x, grid_x_sa()), (y, grid_y_sa())):
            assert sa_run(machine, convolve(grid_encode(g), grid_encode(wreath_mul(g, step))))


def test_phase_one_heights():
    for gen in ("x", "y"):
        assert phase_one_heights(100, gen) == [ceil_sqrt(m) for m in range(1, 101)]


def test_witnesses(grid):
    assert len(grid_encode(witness_element(2))) == 23
    assert single_lamp_length((0, -2)) == 5
    assert witness_family([1, 2, 3]) == [(1, 8, 3), (2, 23, 5), (3, 46, 7)]
    assert word_length(grid, witness_element(2)) == 5


def test_bounds(grid_ball):
    report = grid_bounds_check(grid_ball)
    assert report.passed
    assert report.lam is None and report.mu is None
    assert len(report.family) == 8
    assert report.best_ratio <= 1


def test_c_relocations():
    assert list(c_relocations("0C1")) == ["C01", "00c"]
