"""Command-line front end.

Exit codes: 0 success/PASS, 1 negative domain result (non-member, FAIL),
2 usage or format error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .chart import INFINITE, count_parses, enumerate_language, recognize
from .grammar import FormatError, GrammarError, format_grammar, format_word, is_linear, parse_grammar
from .oracle import (
    sweep_disjointness,
    sweep_grammar_vs_predicate,
    sweep_member_oracle,
    sweep_refuter,
    sweep_separation_pairs,
    sweep_stratified,
)
from .refutation import InternalInconsistencyError, NotLightError, format_result, refute, verify_result
from .semilinear import member_union, parse_union
from .witness import (
    build_component_grammar,
    build_union_grammar,
    member_L,
    member_component,
    parse_point,
)

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    exit_code: int
    report: str


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _builtin_grammar(component: str):
    if component == "union":
        return build_union_grammar()
    return build_component_grammar(int(component))


def _load_grammar(args):
    if getattr(args, "grammar", None):
        return parse_grammar(_read(args.grammar))
    if getattr(args, "component", None):
        return _builtin_grammar(args.component)
    raise UsageError("give --grammar FILE or --component 1..4|union")


def cmd_grammar(args) -> CommandOutcome:
    if args.action == "build":
        text = format_grammar(_builtin_grammar(args.component))
        if args.out:
            Path(args.out).write_text(text)
            return CommandOutcome(OK, f"wrote {args.out}\n")
        return CommandOutcome(OK, text)
    grammar = _load_grammar(args)
    if args.action == "check-linear":
        linear = is_linear(grammar)
        return CommandOutcome(OK if linear else NEGATIVE, f"{str(linear).lower()}\n")
    if args.action == "enum":
        words = sorted(enumerate_language(grammar, args.max_len))
        return CommandOutcome(OK, "".join(format_word(w) + "\n" for w in words))
    if args.action == "parse":
        ok = recognize(grammar, args.input)
        return CommandOutcome(OK if ok else NEGATIVE, f"{str(ok).lower()}\n")
    count = count_parses(grammar, args.input)
    text = "INFINITE" if count == INFINITE else str(count)
    return CommandOutcome(OK, text + "\n")


def cmd_member(args) -> CommandOutcome:
    point = parse_point(args.point)
    if args.union:
        union = parse_union(_read(args.union))
        if len(point) != union.dimension:
            raise UsageError(f"point has dimension {len(point)}, union has {union.dimension}")
        found = member_union(union, point)
        if found is None:
            return CommandOutcome(NEGATIVE, "non-member\n")
        coeffs = "[" + ", ".join(map(str, found.coefficients)) + "]"
        return CommandOutcome(OK, f"member set={found.set_index} coeffs={coeffs}\n")
    if len(point) != 9:
        raise UsageError(f"point has dimension {len(point)}, expected 9")
    target = args.target
    inside = member_L(point) if target == "L" else member_component(point, int(target[1:]))
    return CommandOutcome(OK if inside else NEGATIVE, "member\n" if inside else "non-member\n")


def cmd_refute(args) -> CommandOutcome:
    union = parse_union(_read(args.union_file))
    if union.dimension != 9:
        raise UsageError(f"union has dimension {union.dimension}, expected 9")
    try:
        result = refute(union)
    except NotLightError as exc:
        raise UsageError(str(exc)) from None
    text = format_result(result, union, trace=args.trace)
    if args.verify:
        verified = verify_result(union, result)
        text += f"verify: {'ok' if verified else 'FAILED'}\n"
        if not verified:
            return CommandOutcome(INTERNAL, text)
    return CommandOutcome(OK, text)


def cmd_sweep(args) -> CommandOutcome:
    kind = args.kind
    if kind == "grammar":
        component = args.component or "union"
        target = "L" if component == "union" else component
        report = sweep_grammar_vs_predicate(_builtin_grammar(component), target, args.max_len,
                                            counts=args.counts)
    elif kind == "disjoint":
        report = sweep_disjointness(args.max_coord)
    elif kind == "pairs":
        report = sweep_separation_pairs(args.max_coord)
    elif kind == "refuter":
        report = sweep_refuter(args.trials, args.max_sets, args.max_basis, args.max_coord,
                               args.seed, covering=args.covering)
    elif kind == "stratified":
        report = sweep_stratified(args.trials, args.seed)
    else:
        report = sweep_member_oracle(args.queries, args.seed, max_coord=args.max_coord)
    return CommandOutcome(OK if report.passed else NEGATIVE, report.format(tsv=args.format == "tsv"))


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unamblin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grammar", help="build, parse with and inspect grammars")
    g.add_argument("action", choices=["build", "parse", "count", "enum", "check-linear"])
    g.add_argument("--component", choices=["1", "2", "3", "4", "union"])
    g.add_argument("--grammar", metavar="FILE")
    g.add_argument("--input", default="", help='word such as "a1 a9"; empty for epsilon')
    g.add_argument("--max-len", type=_nonnegative, default=4)
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_grammar)

    m = sub.add_parser("member", help="test a point against psi(L), a component or a union file")
    m.add_argument("point", help='e.g. "(1 3 2 2 1 2 2 1 1)"')
    where = m.add_mutually_exclusive_group(required=True)
    where.add_argument("--in", dest="target", choices=["L", "L1", "L2", "L3", "L4"])
    where.add_argument("--union", metavar="FILE")
    m.set_defaults(func=cmd_member)

    r = sub.add_parser("refute", help="find a counterexample for a light union file")
    r.add_argument("union_file")
    r.add_argument("--trace", action="store_true")
    r.add_argument("--verify", action="store_true")
    r.set_defaults(func=cmd_refute)

    s = sub.add_parser("sweep", help="run a brute-force cross-check")
    s.add_argument("kind", choices=["grammar", "disjoint", "pairs", "refuter", "stratified",
                                    "member-oracle"])
    s.add_argument("--component", choices=["1", "2", "3", "4", "union"])
    s.add_argument("--max-len", type=_nonnegative, default=8)
    s.add_argument("--counts", action="store_true", help="grammar sweep: also require 0/1 parse counts")
    s.add_argument("--max-coord", type=_nonnegative, default=None)
    s.add_argument("--trials", type=_nonnegative, default=1000)
    s.add_argument("--max-sets", type=_nonnegative, default=5)
    s.add_argument("--max-basis", type=_nonnegative, default=6)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--covering", action="store_true", help="refuter sweep: unions that cover v")
    s.add_argument("--queries", type=_nonnegative, default=10000)
    s.add_argument("--format", choices=["text", "tsv"], default="text")
    s.set_defaults(func=cmd_sweep)
    return parser


_DEFAULT_MAX_COORD = {"disjoint": 3, "pairs": 3, "refuter": 4, "member-oracle": 4}


def run(argv=None) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandOutcome(exc.code if isinstance(exc.code, int) else USAGE, "")
    if args.command == "sweep" and args.max_coord is None:
        args.max_coord = _DEFAULT_MAX_COORD.get(args.kind, 4)
    try:
        return args.func(args)
    except InternalInconsistencyError as exc:
        return CommandOutcome(INTERNAL, f"internal inconsistency: {exc}\n")
    except (UsageError, FormatError, GrammarError, ValueError) as exc:
        return CommandOutcome(USAGE, f"error: {exc}\n")


def main(argv=None) -> int:
    outcome = run(argv)
    stream = sys.stderr if outcome.exit_code in (USAGE, INTERNAL) else sys.stdout
    stream.write(outcome.report)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
