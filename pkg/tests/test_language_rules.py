from wreath.language_rules import (
    bracket_grammar,
    check_rules,
    marker_counts,
    no_zero_at_brackets,
    no_zero_at_ends,
    rule_gaps,
    rule_names,
    satisfies_rules,
    separated,
)
from wreath.rep_f2 import f2_is_canonical


def test_rule_names():
    assert rule_names() == [
        "known_symbols",
        "bracket_grammar",
        "paren_anchor",
        "square_anchor",
        "origin_anchor_first_level",
        "separated",
        "no_zero_at_brackets",
        "no_zero_at_ends",
        "marker_counts",
    ]


def test_bracket_grammar():
    assert bracket_grammar("") is None
    assert bracket_grammar("1(1[1]1)1") is None
    assert bracket_grammar("[") == 0
    assert bracket_grammar("((") == 1
    assert bracket_grammar("(") == 1
    assert bracket_grammar("(]") == 1


def test_single_rules():
    assert separated("(D)A") == 0
    assert separated("(D1)A") is None
    assert no_zero_at_brackets("(0D1)A") == 0
    assert no_zero_at_ends("0AC") == 0
    assert no_zero_at_ends("AC0") == 2
    assert marker_counts("AC") is None
    assert marker_counts("b") is None
    assert marker_counts("ACC") == 2


def test_check_rules():
    assert satisfies_rules("AC")
    assert all(v is None for v in check_rules("1AC1").values())
    violations = check_rules("0AC")
    assert violations["no_zero_at_ends"] == 0
    assert not satisfies_rules("x")


def test_rule_gaps():
    # the identity word carries no lamplighter mark
    gaps = rule_gaps(["A", "AC", "0AC"], f2_is_canonical)
    assert gaps == [("A", False, True)]
