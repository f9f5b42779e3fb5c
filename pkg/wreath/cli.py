"""Command-line surface: encode, decode, mul, length, verify and export."""

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence

from .automata import RunBounds, machine_document
from .constants import BALL_CAP, EXIT_CAP, EXIT_FAILED, EXIT_INPUT, EXIT_OK, MAX_SILENT_STEPS
from .errors import (
    BallTooLargeError,
    LiteralParseError,
    ResourceCapError,
    RunBoundsExceeded,
    StructureError,
    UsageError,
    WordParseError,
)
from .graph_view import machine_dot
from .groups import format_element, parse_element, word_length, wreath_mul
from .rep_z import ll_length
from .utils import dump_json
from .verifier import GROUPS, Verifier, machine_registry, representation

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "dot", "csv")


@dataclass
class CliConfig:
    """Settings of one invocation, taken from the flags only."""

    command: str
    group: str
    output: str = "text"
    radius: Optional[int] = None
    maxlen: Optional[int] = None
    ball_cap: int = BALL_CAP
    max_silent: int = MAX_SILENT_STEPS
    verbosity: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        if args.group not in GROUPS:
            raise UsageError(f"unknown group {args.group!r}; choose one of {', '.join(GROUPS)}")
        return cls(
            command=args.command,
            group=args.group,
            output=args.format,
            radius=getattr(args, "radius", None),
            maxlen=getattr(args, "maxlen", None),
            ball_cap=args.ball_cap,
            max_silent=args.max_silent,
            verbosity=args.verbose - args.quiet,
        )

    @property
    def bounds(self) -> RunBounds:
        return RunBounds(max_silent=self.max_silent)


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.ERROR
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help=f"one of {', '.join(GROUPS)}")
    common.add_argument("--format", default="text", choices=FORMATS)
    common.add_argument("--ball-cap", type=int, default=BALL_CAP, help="most elements a ball search may visit")
    common.add_argument("--max-silent", type=int, default=MAX_SILENT_STEPS, help="silent steps allowed between reads")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("-q", "--quiet", action="count", default=0)

    parser = argparse.ArgumentParser(prog="wreath", description="Cayley automatic representations of wreath products")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="element literal to word")
    p.add_argument("literal")
    p = sub.add_parser("decode", parents=[common], help="word to element literal")
    p.add_argument("word")
    p = sub.add_parser("mul", parents=[common], help="product of two element literals")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("length", parents=[common], help="word length of an element")
    p.add_argument("literal")
    p.add_argument("--method", choices=("formula", "bfs"), default="bfs")
    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--radius", type=int)
    p.add_argument("--maxlen", type=int)
    p = sub.add_parser("export", parents=[common], help="write a machine as JSON or DOT")
    p.add_argument("--machine", required=True)
    return parser


class Result:
    """Text to print and the exit code."""

    def __init__(self, text: str, code: int = EXIT_OK):
        self.text = text
        self.code = code


def cmd_encode(config: CliConfig, args: argparse.Namespace) -> Result:
    rep = representation(config.group)
    word = rep.encode(parse_element(args.literal, rep.spec))
    return Result(dump_json({"word": word}) if config.output == "json" else word)


def cmd_decode(config: CliConfig, args: argparse.Namespace) -> Result:
    rep = representation(config.group)
    literal = format_element(rep.decode(args.word))
    return Result(dump_json({"element": literal}) if config.output == "json" else literal)


def cmd_mul(config: CliConfig, args: argparse.Namespace) -> Result:
    spec = representation(config.group).spec
    product = wreath_mul(parse_element(args.left, spec), parse_element(args.right, spec))
    literal = format_element(product)
    return Result(dump_json({"element": literal}) if config.output == "json" else literal)


def cmd_length(config: CliConfig, args: argparse.Namespace) -> Result:
    spec = representation(config.group).spec
    g = parse_element(args.literal, spec)
    if args.method == "formula":
        if config.group != "ll":
            raise UsageError("the formula method exists only for the lamplighter group ll")
        n = ll_length(g)
    else:
        n = word_length(spec, g, config.ball_cap)
    return Result(dump_json({"length": n, "method": args.method}) if config.output == "json" else str(n))


def _verify_text(report) -> str:
    lines = [f"{report.group}: {report.status} (radius {report.radius}, maxlen {report.maxlen}, {report.ball_size} elements)"]
    for check in report.checks:
        line = f"  {check.status:6} {check.name}"
        if "requested_maxconvlen" in check.detail:
            line += f" (soundness up to length {check.detail['maxconvlen']} of {check.detail['requested_maxconvlen']})"
        lines.append(line)
    if report.capped:
        lines.append(f"  capped: {report.capped}")
    return "\n".join(lines)


def _verify_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "check", "status"])
    for check in report.checks:
        writer.writerow([report.group, check.name, check.status])
    return buf.getvalue().rstrip("\n")


def cmd_verify(config: CliConfig, args: argparse.Namespace) -> Result:
    verifier = Verifier(config.group, config.radius, config.maxlen, bounds=config.bounds, ball_cap=config.ball_cap)
    report = verifier.run()
    if config.output == "json":
        text = dump_json(report.to_dict())
    elif config.output == "csv":
        text = _verify_csv(report)
    else:
        text = _verify_text(report)
    if report.capped:
        return Result(text, EXIT_CAP)
    return Result(text, EXIT_OK if report.passed else EXIT_FAILED)


def cmd_export(config: CliConfig, args: argparse.Namespace) -> Result:
    registry = machine_registry(config.group)
    name = args.machine
    if name.startswith(config.group + ":"):
        name = name[len(config.group) + 1:]
    if name not in registry:
        raise UsageError(f"no machine {args.machine!r} for {config.group}; known: {', '.join(sorted(registry))}")
    machine = registry[name]()
    if config.output == "dot":
        return Result(machine_dot(machine).rstrip("\n"))
    return Result(dump_json(machine_document(machine)))


COMMANDS: Dict[str, Callable[[CliConfig, argparse.Namespace], Result]] = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "mul": cmd_mul,
    "length": cmd_length,
    "verify": cmd_verify,
    "export": cmd_export,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        config = CliConfig.from_args(args)
        setup_logging(config.verbosity)
        result = COMMANDS[config.command](config, args)
    except (LiteralParseError, WordParseError, UsageError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BallTooLargeError, ResourceCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except RunBoundsExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    print(result.text)
    return result.code
