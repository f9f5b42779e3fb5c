"""Verification suites behind the ``verify`` command.

A suite runs, for one group: the round trip on a ball, a relation audit per
generator, the length bounds, and the group's own pinned facts.  Reports are
plain data with a fixed ordering so that identical runs serialize to
identical bytes.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from .automata import (
    DEFAULT_BOUNDS,
    Fsa,
    Machine,
    Pda,
    Representation,
    RunBounds,
    enumerate_accepted,
    machine_accepts,
    relation_audit,
)
from .constants import (
    BALL_CAP,
    DEFAULT_MAXLEN,
    DEFAULT_RADIUS,
    ENUMERATION_MAXLEN_GUIDE,
    STATUS_CAPPED,
    STATUS_FAIL,
    STATUS_PASS,
)
from .errors import BallTooLargeError, ResourceCapError, UnknownConstantError, UsageError, WordParseError
from .graph_view import machine_summary
from .groups import DistanceMap, GroupSpec, WreathElement, bfs_ball, embed_lamplighter, lamplighter_spec
from .language_rules import bracket_grammar, rule_gaps
from .presentations import PRESENTATIONS
from .rep_f2 import (
    REFERENCE_WORDS,
    F2Representation,
    f2_bounds_check,
    f2_encode,
    f2_is_canonical,
    f2_language_pda,
    f2_mult_pda,
    f2_step_property,
    light_relocations,
)
from .rep_grid import (
    REFERENCE_WORD,
    WITNESS_RADII,
    GridRepresentation,
    grid_bounds_check,
    grid_is_canonical,
    grid_language_fsa,
    grid_mult_machine,
    grid_shift,
    phase_one_heights,
    single_lamp_length,
    spiral,
    spiral_inv,
    spiral_walk,
    witness_element,
)
from .rep_z import (
    GzRepresentation,
    LlRepresentation,
    gz_constants,
    gz_mult_fsa,
    gz_to_ll,
    ll_bounds_check,
    ll_decode,
    ll_encode,
    ll_language_fsa,
    ll_length,
    ll_mult_fsa,
    ll_normal_form,
    ll_step_property,
)
from .utils import ceil_sqrt

logger = logging.getLogger(__name__)

GROUPS = ("ll", "gz:z2", "gz:z", "f2", "grid")

FAILURE_LIMIT = 10
SPIRAL_CHECK = 10_000
HEIGHT_CHECK = 400
F2_LANGUAGE_MAXLEN = 10
GRID_LANGUAGE_MAXLEN = 12

# |g|_G <= C|w_G| + D where it is known; binary Z has no such bound.
G_LENGTH_CONSTANTS: Dict[str, Tuple[Optional[int], Optional[int]]] = {"z2": (1, 0), "z": (None, None)}

GRID_MACHINE_OF = {"h": "h", "x": "Mx", "x-1": "Mx-1", "y": "My", "y-1": "My-1"}

SPIRAL_HEAD = [(0, 0), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1)]


def _check_group(group: str) -> None:
    if group not in GROUPS:
        raise UsageError(f"unknown group {group!r}; choose one of {', '.join(GROUPS)}")


def _presentation(group: str):
    return PRESENTATIONS[group.split(":", 1)[1]]()


def representation(group: str) -> Representation:
    _check_group(group)
    if group == "ll":
        return LlRepresentation()
    if group == "f2":
        return F2Representation()
    if group == "grid":
        return GridRepresentation()
    return GzRepresentation(_presentation(group))


def machine_registry(group: str) -> Dict[str, Callable[[], Machine]]:
    """Exportable machines of a group by short name."""
    _check_group(group)
    if group == "ll":
        table: Dict[str, Callable[[], Machine]] = {"L": ll_language_fsa}
        for gen in ("a", "a-1", "h"):
            table[gen] = lambda gen=gen: ll_mult_fsa(gen)
        return table
    if group == "f2":
        table = {"L": f2_language_pda}
        for gen in ("h", "a", "a-1", "b", "b-1"):
            table[gen] = lambda gen=gen: f2_mult_pda(gen)
        return table
    if group == "grid":
        table = {"L": grid_language_fsa}
        for gen, name in GRID_MACHINE_OF.items():
            table[name] = lambda gen=gen: grid_mult_machine(gen)
        return table
    G = _presentation(group)
    gens = ["a", "a-1"] + G.generator_names()
    return {gen: (lambda gen=gen: gz_mult_fsa(G, gen)) for gen in gens}


def generator_machines(group: str) -> List[Tuple[str, str]]:
    """(generator, machine name) pairs audited by the suite."""
    spec = representation(group).spec
    names = [gen for gen, _ in spec.steps()]
    if group == "grid":
        return [(gen, GRID_MACHINE_OF[gen]) for gen in names]
    return [(gen, gen) for gen in names]


@dataclass
class CheckResult:
    name: str
    status: str
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerifyReport:
    group: str
    radius: int
    maxlen: int
    ball_size: int = 0
    checks: List[CheckResult] = field(default_factory=list)
    machines: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    capped: Optional[str] = None

    def add(self, name: str, passed: bool, **detail: Any) -> CheckResult:
        result = CheckResult(name, STATUS_PASS if passed else STATUS_FAIL, detail)
        self.checks.append(result)
        logger.info("%s %s: %s", self.group, name, result.status)
        return result

    @property
    def status(self) -> str:
        if self.capped:
            return STATUS_CAPPED
        if any(c.status == STATUS_FAIL for c in self.checks):
            return STATUS_FAIL
        return STATUS_PASS

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "radius": self.radius,
            "maxlen": self.maxlen,
            "ball_size": self.ball_size,
            "status": self.status,
            "capped": self.capped,
            "checks": [c.to_dict() for c in self.checks],
            "machines": self.machines,
        }


def _machine_info(m: Machine) -> Dict[str, Any]:
    # Rule-defined pushdown automata are only tabulated on export.
    if isinstance(m, Pda) and m.transitions is None:
        return {"type": "pda", "deterministic": m.deterministic, "tabulated": False}
    return machine_summary(m)


class Verifier:
    """Runs the verification suite of one group.

    Args:
        group: Group selector, one of ``GROUPS``
        radius: Ball radius; defaults per group
        maxlen: Longest convolution in soundness sweeps; defaults per group
        bounds: Run bounds for pushdown and stack automata
        ball_cap: Most elements a ball search may visit
    """

    def __init__(
        self,
        group: str,
        radius: Optional[int] = None,
        maxlen: Optional[int] = None,
        bounds: Optional[RunBounds] = None,
        ball_cap: int = BALL_CAP,
    ):
        _check_group(group)
        self.group = group
        self.radius = DEFAULT_RADIUS[group] if radius is None else radius
        self.maxlen = DEFAULT_MAXLEN[group] if maxlen is None else maxlen
        self.bounds = bounds or DEFAULT_BOUNDS
        self.ball_cap = ball_cap
        self.rep = representation(group)
        self.spec: GroupSpec = self.rep.spec
        self.machines = machine_registry(group)

    def run(self) -> VerifyReport:
        """Run every check; a cap stops the run and leaves a partial report."""
        report = VerifyReport(self.group, self.radius, self.maxlen)
        try:
            ball = bfs_ball(self.spec, self.radius, self.ball_cap)
            report.ball_size = len(ball)
            self.round_trip(ball, report)
            self.audits(ball, report)
            suite = {"ll": self._suite_ll, "f2": self._suite_f2, "grid": self._suite_grid}.get(self.group, self._suite_gz)
            suite(ball, report)
        except (BallTooLargeError, ResourceCapError) as exc:
            logger.warning("%s verification capped: %s", self.group, exc)
            report.capped = str(exc)
        return report

    def _language(self) -> Optional[Machine]:
        return self.machines["L"]() if "L" in self.machines else None

    def round_trip(self, ball: DistanceMap, report: VerifyReport) -> None:
        language = self._language()
        failures: List[str] = []
        for g in ball.elements():
            w = self.rep.encode(g)
            try:
                back = self.rep.decode(w)
            except WordParseError as exc:
                failures.append(f"{w}: {exc.reason}")
                continue
            if back != g:
                failures.append(f"{w}: decodes to another element")
            elif language is not None and not machine_accepts(language, w, self.bounds):
                failures.append(f"{w}: rejected by the language machine")
        report.add("round_trip", not failures, elements=len(ball), failures=failures[:FAILURE_LIMIT])

    def audits(self, ball: DistanceMap, report: VerifyReport) -> None:
        for gen, name in generator_machines(self.group):
            m = self.machines[name]()
            maxconvlen = min(self.maxlen, ENUMERATION_MAXLEN_GUIDE) if isinstance(m, Fsa) else self.maxlen
            audit = relation_audit(m, self.rep, gen, ball, maxconvlen, self.bounds)
            result = audit.to_dict()
            result["missed"] = result["missed"][:FAILURE_LIMIT]
            result["spurious"] = result["spurious"][:FAILURE_LIMIT]
            if maxconvlen < self.maxlen:
                result["requested_maxconvlen"] = self.maxlen
                logger.info("audit %s: soundness sweep limited to length %d", gen, maxconvlen)
            report.add(f"audit:{gen}", audit.passed, **result)
            report.machines[name] = _machine_info(m)
        if "L" in self.machines:
            report.machines["L"] = _machine_info(self.machines["L"]())

    def language_soundness(self, report: VerifyReport, maxlen: int, canonical: Callable[[str], bool]) -> List[str]:
        """Every accepted word up to ``maxlen`` is the encoding of its element."""
        words = [w for w in enumerate_accepted(self._language(), maxlen, self.bounds) if isinstance(w, str)]
        wrong = [w for w in words if not canonical(w)]
        report.add("language_soundness", not wrong, maxlen=maxlen, accepted=len(words), wrong=wrong[:FAILURE_LIMIT])
        return words

    # group suites

    def _suite_ll(self, ball: DistanceMap, report: VerifyReport) -> None:
        formula = [str(g) for g in ball.elements() if ll_length(g) != ball.distance(g)]
        report.add("length_formula", not formula, mismatches=formula[:FAILURE_LIMIT])
        normal = []
        for g in ball.elements():
            forms = ll_normal_form(g)
            if any(self.spec.evaluate(form) != g for form in forms) or min(map(len, forms)) != ball.distance(g):
                normal.append(str(g))
        report.add("normal_forms", not normal, mismatches=normal[:FAILURE_LIMIT])
        steps = [str(g) for g in ball.elements() if not ll_step_property(g)]
        report.add("step_property", not steps, mismatches=steps[:FAILURE_LIMIT])
        self.language_soundness(report, self.maxlen, _canonical(ll_decode, ll_encode))
        bounds = ll_bounds_check(ball)
        report.add("bounds", bounds.passed and bool(bounds.lower_witnesses) and bool(bounds.upper_witnesses),
                   bounds=bounds.to_dict())

    def _suite_gz(self, ball: DistanceMap, report: VerifyReport) -> None:
        G = _presentation(self.group)
        C, D = G_LENGTH_CONSTANTS.get(G.name, (None, None))
        try:
            constants = gz_constants(G, ball, C, D)
        except UnknownConstantError as exc:
            report.add("constants", False, error=str(exc))
            return
        detail = constants.to_dict()
        report.add("constants", constants.report is not None and constants.report.passed, **detail)
        if G.name == "z2":
            differ = [str(g) for g in ball.elements() if gz_to_ll(self.rep.encode(g)) != ll_encode(g)]
            report.add("lamplighter_agreement", not differ, mismatches=differ[:FAILURE_LIMIT])

    def _suite_f2(self, ball: DistanceMap, report: VerifyReport) -> None:
        broken = [w for w in REFERENCE_WORDS if not f2_is_canonical(w)]
        report.add("reference_words", not broken, words=list(REFERENCE_WORDS), broken=broken)
        words = self.language_soundness(report, min(self.maxlen, F2_LANGUAGE_MAXLEN), f2_is_canonical)
        candidates = list(words)
        for w in words:
            candidates.extend(light_relocations(w))
        gaps = rule_gaps(sorted(set(candidates)), f2_is_canonical)
        # Reported, never fatal: the named rules are not meant to pin canonicity.
        report.add("rule_gaps", True, words=len(set(candidates)), gaps=len(gaps), examples=gaps[:FAILURE_LIMIT])
        unbalanced = [w for w in map(f2_encode, ball.elements()) if bracket_grammar(w) is not None]
        report.add("bracket_grammar", not unbalanced, mismatches=unbalanced[:FAILURE_LIMIT])
        steps = [str(g) for g in ball.elements() if not f2_step_property(g)]
        report.add("step_property", not steps, mismatches=steps[:FAILURE_LIMIT])
        line = bfs_ball(lamplighter_spec(), self.radius, self.ball_cap)
        differ = [str(g) for g in line.elements()
                  if not g.is_identity() and f2_encode(embed_lamplighter(g)) != ll_encode(g)]
        report.add("lamplighter_subgroup", not differ, elements=len(line), mismatches=differ[:FAILURE_LIMIT])
        bounds = f2_bounds_check(ball)
        report.add("bounds", bounds.passed and bool(bounds.lower_witnesses) and bool(bounds.upper_witnesses),
                   bounds=bounds.to_dict())

    def _suite_grid(self, ball: DistanceMap, report: VerifyReport) -> None:
        g = self.rep.decode(REFERENCE_WORD)
        report.add("reference_word", g.pos == (0, -2) and (0, -2) in g.support
                   and self.rep.encode(g) == REFERENCE_WORD, word=REFERENCE_WORD, element=str(g))
        walked = list(spiral_walk(SPIRAL_CHECK))
        closed = [spiral(k) for k in range(1, SPIRAL_CHECK + 1)]
        report.add(
            "spiral",
            closed[:8] == SPIRAL_HEAD and walked == closed and spiral_inv((0, -2)) == 23
            and all(spiral_inv(p) == k for k, p in enumerate(closed, 1)),
            checked=SPIRAL_CHECK,
        )
        bad_offsets = [k for k in range(1, SPIRAL_CHECK + 1) if not _offset_ok(k)]
        report.add("offset_property", not bad_offsets, checked=SPIRAL_CHECK, failures=bad_offsets[:FAILURE_LIMIT])
        heights = phase_one_heights(HEIGHT_CHECK)
        expected = [ceil_sqrt(m) for m in range(1, HEIGHT_CHECK + 1)]
        report.add("stack_height", heights == expected, checked=HEIGHT_CHECK)
        self.language_soundness(report, min(self.maxlen, GRID_LANGUAGE_MAXLEN), grid_is_canonical)
        witnesses = [r for r in WITNESS_RADII if witness_element(r) in ball]
        off = [r for r in witnesses if ball.distance(witness_element(r)) != single_lamp_length((0, -r))]
        report.add("witness_lengths", not off, radii=witnesses, mismatches=off)
        bounds = grid_bounds_check(ball)
        report.add("bounds", bounds.passed, bounds=bounds.to_dict())


def _offset_ok(k: int) -> bool:
    other = grid_shift(k, "x")
    jump = abs(other - k)
    return jump == 1 or jump == 4 * ceil_sqrt(min(k, other)) + 1


def _canonical(decode: Callable[[str], WreathElement], encode: Callable[[WreathElement], str]) -> Callable[[str], bool]:
    def check(w: str) -> bool:
        try:
            return encode(decode(w)) == w
        except WordParseError:
            return False

    return check


def verify(group: str, radius: Optional[int] = None, maxlen: Optional[int] = None, **options: Any) -> VerifyReport:
    return Verifier(group, radius, maxlen, **options).run()
