import json

import pytest

from wreath.errors import UsageError
from wreath.utils import dump_json
from wreath.verifier import (
    GROUPS,
    CheckResult,
    VerifyReport,
    Verifier,
    generator_machines,
    machine_registry,
    verify,
)


def check_names(report):
    return [c.name for c in report.checks]


def test_registry_names():
    assert sorted(machine_registry("ll")) == ["L", "a", "a-1", "h"]
    assert sorted(machine_registry("f2")) == ["L", "a", "a-1", "b", "b-1", "h"]
    assert sorted(machine_registry("grid")) == ["L", "Mx", "Mx-1", "My", "My-1", "h"]
    assert sorted(machine_registry("gz:z")) == ["a", "a-1", "g1", "g1-1"]
    assert sorted(machine_registry("gz:z2")) == ["a", "a-1", "h"]
    assert ("x", "Mx") in generator_machines("grid")
    with pytest.raises(UsageError):
        machine_registry("z3")


def test_report_status():
    report = VerifyReport("ll", 1, 1)
    assert report.status == "pass"
    report.add("one", True)
    report.checks.append(CheckResult("two", "fail"))
    assert report.status == "fail"
    report.capped = "ball too large"
    assert report.status == "capped"
    assert not report.passed


def test_lamplighter_suite():
    report = verify("ll", radius=3, maxlen=5)
    assert report.passed, dump_json(report.to_dict())
    names = check_names(report)
    assert names[0] == "round_trip"
    for name in ("audit:a", "audit:a-1", "audit:h", "length_formula", "normal_forms", "bounds"):
        assert name in names
    assert set(report.machines) == {"L", "a", "a-1", "h"}
    assert "requested_maxconvlen" not in report.checks[names.index("audit:a")].detail


def test_audit_reports_limited_sweep(monkeypatch):
    monkeypatch.setattr("wreath.verifier.ENUMERATION_MAXLEN_GUIDE", 3)
    report = verify("ll", radius=1, maxlen=5)
    audit = next(c for c in report.checks if c.name == "audit:h")
    assert audit.detail["maxconvlen"] == 3
    assert audit.detail["requested_maxconvlen"] == 5


@pytest.mark.parametrize("group", ["gz:z2", "gz:z"])
def test_gz_suites(group):
    report = verify(group, radius=2, maxlen=4)
    assert report.passed, dump_json(report.to_dict())
    assert "constants" in check_names(report)


def test_f2_suite():
    report = verify("f2", radius=1, maxlen=4)
    assert report.passed, dump_json(report.to_dict())
    for name in ("reference_words", "rule_gaps", "bracket_grammar", "lamplighter_subgroup", "bounds"):
        assert name in check_names(report)
    assert report.machines["h"] == {"type": "pda", "deterministic": False, "tabulated": False}


def test_grid_suite():
    report = verify("grid", radius=1, maxlen=6)
    assert report.passed, dump_json(report.to_dict())
    for name in ("reference_word", "spiral", "offset_property", "stack_height", "witness_lengths", "bounds"):
        assert name in check_names(report)


def test_grid_defaults():
    v = Verifier("grid")
    assert (v.radius, v.maxlen) == (4, 30)


def test_capped_run():
    report = Verifier("grid", radius=3, ball_cap=10).run()
    assert report.status == "capped"
    assert report.checks == []


def test_reports_serialize_identically():
    first = dump_json(verify("ll", radius=2, maxlen=4).to_dict())
    second = dump_json(verify("ll", radius=2, maxlen=4).to_dict())
    assert first == second
    assert json.loads(first)["status"] == "pass"


def test_unknown_group():
    with pytest.raises(UsageError):
        Verifier("free")
    assert "grid" in GROUPS
