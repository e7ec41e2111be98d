"""Command-line entry point.

Exit codes: 0 success / yes / agreement, 1 unsolvable / no / disagreement,
2 resource limit, 3 malformed input, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
import time
from typing import Optional

from . import formats
from .engine import check_invariants
from .formats import FormatError
from .oracle import InstanceError, PartitionInstance, ThreePartitionInstance, oracle_3partition, oracle_partition
from .reductions import (
    BOARD,
    DECK,
    DEFAULT,
    HAND,
    REDUCTIONS,
    VARIANTS,
    CertificateError,
    ReductionError,
    adapt_goal,
    extract_certificate,
    reduce,
)
from .scenarios import BUILTIN, replay
from .solver import ResourceLimit, SolveLimits, Solved, SolverError, solve, verify_line
from .state import Goal

log = logging.getLogger("hslethal")

EXIT_OK, EXIT_NO, EXIT_LIMIT, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InvariantViolation(Exception):
    pass


def _emit(doc) -> None:
    sys.stdout.write(formats.dumps(doc))


def _limits(args) -> SolveLimits:
    base = SolveLimits.from_env()
    return SolveLimits(
        max_states=args.max_states or base.max_states,
        max_depth=args.max_depth or base.max_depth,
        time_limit=args.time_limit if args.time_limit is not None else base.time_limit,
    )


def _checked(puzzle):
    problems = check_invariants(puzzle.state)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return puzzle


def _read_instance(args):
    if args.values is not None:
        values = [int(v) for v in args.values.split(",") if v.strip()]
        return values, args.n
    doc = formats.instance_from_doc(formats.read(args.instance))
    n = args.n if args.n is not None else doc.n
    return doc.values, n


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    values, n = _read_instance(args)
    puzzle = reduce(args.reduction, values, n, args.variant)
    puzzle = _checked(adapt_goal(puzzle, args.goal))
    doc = formats.puzzle_to_doc(puzzle)
    if args.output:
        formats.write(args.output, doc)
    else:
        _emit(doc)
    return EXIT_OK


def cmd_solve(args) -> int:
    puzzle = _checked(formats.puzzle_from_doc(formats.read(args.puzzle)))
    t0 = time.monotonic()
    result = solve(puzzle, _limits(args), prune=not args.no_prune)
    log.info("%s after %d states in %.2fs", result.verdict, result.states_explored, time.monotonic() - t0)
    report = {"verdict": result.verdict, "states_explored": result.states_explored}
    if isinstance(result, ResourceLimit):
        report["limit"] = result.limit
    if isinstance(result, Solved):
        doc = formats.solution_to_doc(result.line)
        if args.output:
            formats.write(args.output, doc)
        else:
            report["solution"] = doc
        if not verify_line(puzzle, result.line).ok:
            raise InvariantViolation("solver returned a line that does not verify")
    print(json.dumps(report, sort_keys=True))
    return {"solved": EXIT_OK, "unsolvable": EXIT_NO}.get(result.verdict, EXIT_LIMIT)


def cmd_verify(args) -> int:
    puzzle = formats.puzzle_from_doc(formats.read(args.puzzle))
    line = formats.solution_from_doc(formats.read(args.solution))
    report = verify_line(puzzle, line)
    print(json.dumps(report.as_dict(), sort_keys=True))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_certificate(args) -> int:
    puzzle = formats.puzzle_from_doc(formats.read(args.puzzle))
    line = formats.solution_from_doc(formats.read(args.solution))
    try:
        cert = extract_certificate(puzzle, line)
    except CertificateError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_NO
    doc = {
        "format_version": formats.FORMAT_VERSION,
        "kind": "certificate",
        "indices": cert.groups,
        "groups": cert.values(puzzle.provenance.values),
        "sums": cert.sums,
        "target": cert.target,
    }
    if args.output:
        formats.write(args.output, doc)
    else:
        _emit(doc)
    return EXIT_OK


def cmd_oracle(args) -> int:
    values, n = _read_instance(args)
    if n is not None:
        res = oracle_3partition(ThreePartitionInstance(tuple(values), n), strict_size3=args.strict_size3)
    else:
        res = oracle_partition(PartitionInstance(tuple(values)))
    print(json.dumps({"verdict": "yes" if res.verdict else "no", "witness": res.witness}, sort_keys=True))
    return EXIT_OK if res.verdict else EXIT_NO


# instance families for solver-vs-oracle roundtrips


def _board_family():
    for c in itertools.combinations_with_replacement(range(1, 5), 6):
        if sum(c) % 2 == 0:
            yield BOARD, c, 2


def _hand_family():
    for k in (2, 3, 4):
        for c in itertools.combinations_with_replacement(range(1, 6), k):
            yield HAND, c, None


def _deck_family():
    for k in (2, 3):
        for c in itertools.combinations_with_replacement(range(1, 7), k):
            yield DECK, c, None


FAMILIES = {
    "board3p-exhaustive-small": _board_family,
    "hand-small": _hand_family,
    "deck-small": _deck_family,
}


def oracle_verdict(reduction: str, values, n) -> bool:
    if reduction == BOARD:
        return oracle_3partition(ThreePartitionInstance(tuple(values), n)).verdict
    return oracle_partition(PartitionInstance(tuple(values))).verdict


def cmd_roundtrip(args) -> int:
    limits = _limits(args)
    disagree = limited = 0
    total = 0
    for reduction, values, n in FAMILIES[args.family]():
        total += 1
        puzzle = reduce(reduction, values, n, args.variant)
        if args.goal != Goal.LETHAL.value:
            puzzle = adapt_goal(puzzle, args.goal)
        expected = oracle_verdict(reduction, values, n)
        result = solve(puzzle, limits)
        if isinstance(result, ResourceLimit):
            status = "LIMIT"
            limited += 1
        elif isinstance(result, Solved) == expected:
            status = "agree"
        else:
            status = "DISAGREE"
            disagree += 1
        print(f"{status:8} {reduction} {list(values)} oracle={'yes' if expected else 'no'} solver={result.verdict}")
    print(f"{total} instances, {disagree} disagreements, {limited} resource limits")
    if disagree:
        return EXIT_NO
    return EXIT_LIMIT if limited else EXIT_OK


def cmd_replay(args) -> int:
    if args.scenario in BUILTIN:
        sc = BUILTIN[args.scenario]()
    else:
        sc = formats.scenario_from_doc(formats.read(args.scenario))
    _, checks = replay(sc)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NO


# ---------------------------------------------------------------------------


def _add_instance_args(p) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", help="instance JSON file")
    src.add_argument("--values", help="comma-separated instance values")
    p.add_argument("--n", type=int, help="number of groups (3-PARTITION)")


def _add_limit_args(p) -> None:
    p.add_argument("--max-states", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--time-limit", type=float, help="seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hslethal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="instance -> puzzle")
    _add_instance_args(p)
    p.add_argument("--reduction", choices=REDUCTIONS, required=True)
    p.add_argument("--goal", choices=[g.value for g in Goal], default=Goal.LETHAL.value)
    p.add_argument("--variant", choices=VARIANTS, default=DEFAULT)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="puzzle -> solution or verdict")
    p.add_argument("puzzle")
    p.add_argument("-o", "--output", help="where to write the solution")
    p.add_argument("--no-prune", action="store_true", help="disable symmetry pruning")
    _add_limit_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="replay a solution against a puzzle")
    p.add_argument("puzzle")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certificate", help="recover the partition from a solution")
    p.add_argument("puzzle")
    p.add_argument("solution")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("oracle", help="decide the source instance directly")
    _add_instance_args(p)
    p.add_argument("--strict-size3", action="store_true", help="require groups of exactly three")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("roundtrip", help="solver vs oracle over an instance family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--goal", choices=[g.value for g in Goal], default=Goal.LETHAL.value)
    p.add_argument("--variant", choices=VARIANTS, default=DEFAULT)
    _add_limit_args(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("replay", help="run a scripted scenario")
    p.add_argument("scenario", help=f"scenario file or builtin name ({', '.join(BUILTIN)})")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (FormatError, InstanceError, ReductionError, SolverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
