"""Command line entry point: ``matchaug <verb> [options]``.

Exit status is 0 on success, 2 when an input or a solution fails validation
and 3 when a guaranteed property breaks (the offending sub-instance is
written to stderr).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import generators
from .errors import InvariantBreach
from .graph import ValidationError, check_instance
from .obstructions import KINDS, find_all
from .oracle import BudgetExceeded, OracleBudget, opt_2ecss
from .pipeline import (FAMILY_BUILDERS, format_instance, format_solution, parse_solution,
                       ratio_report, read_instance, solve_many, verify)

EXIT_OK, EXIT_INVALID, EXIT_BREACH = 0, 2, 3

log = logging.getLogger("matchaug")

GEN_FAMILIES = {
    "tight-s3": lambda p, seed: generators.tight_s3(p or 1),
    "g1": lambda p, seed: generators.g1(),
    "g2": lambda p, seed: generators.g2(p or 1),
    "g3": lambda p, seed: generators.g3(p or 1),
    "random": lambda p, seed: generators.gen_random(p or 10, 0.3, seed),
    "well-structured": lambda p, seed: generators.gen_well_structured(p or 14, seed),
}


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> OracleBudget:
    return OracleBudget(max_nodes=args.budget_nodes)


def _params(raw: list[str] | None) -> list[int]:
    out = []
    for chunk in raw or []:
        for tok in chunk.split(","):
            if "-" in tok:
                a, b = tok.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            elif tok:
                out.append(int(tok))
    return out


def cmd_solve(args) -> int:
    items = [(p, read_instance(p)) for p in args.input]
    reports = solve_many(items, _budget(args), jobs=args.jobs)
    _emit("".join(r.to_text(trace=args.trace) for r in reports), args.output)
    if args.json:
        Path(args.json).write_text(json.dumps([r.to_json() for r in reports], indent=2) + "\n")
    return EXIT_OK if all(r.verdict.ok for r in reports) else EXIT_INVALID


def cmd_scan(args) -> int:
    lines = []
    for p in args.input:
        inst = read_instance(p)
        for kind in KINDS:
            for ob in find_all(inst, kind, _budget(args)):
                lines.append(f"{p} {ob.kind} {' '.join(str(v + 1) for v in ob.carrier)}")
    _emit("\n".join(lines) + ("\n" if lines else ""), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    lines = []
    for p in args.input:
        inst = check_instance(read_instance(p), require_2ec=True)
        try:
            cost, ids = opt_2ecss(inst, _budget(args))
        except BudgetExceeded as exc:
            lines.append(f"{p} opt unknown (budget): {exc}")
            continue
        lines.append(f"{p} opt {cost}")
        if args.trace:
            lines.append(format_solution(inst, ids).rstrip("\n"))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if len(args.input) != 1 or not args.solution:
        log.error("verify needs exactly one --input and a --solution")
        return EXIT_INVALID
    inst = read_instance(args.input[0])
    ids = parse_solution(Path(args.solution).read_text())
    verdict = verify(inst, ids)
    _emit(f"{verdict}\n", args.output)
    return EXIT_OK if verdict.ok else EXIT_INVALID


def cmd_gen(args) -> int:
    if args.family not in GEN_FAMILIES:
        log.error("unknown family %r (choose from %s)", args.family, ", ".join(GEN_FAMILIES))
        return EXIT_INVALID
    p = (_params(args.param) or [0])[0]
    inst = GEN_FAMILIES[args.family](p, args.seed)
    _emit(format_instance(inst, comment=f"{args.family} param={p} seed={args.seed}"), args.output)
    return EXIT_OK


def cmd_ratio(args) -> int:
    if args.family not in FAMILY_BUILDERS:
        log.error("unknown family %r (choose from %s)", args.family, ", ".join(FAMILY_BUILDERS))
        return EXIT_INVALID
    rows = ratio_report(args.family, _params(args.param) or [1], _budget(args), seed=args.seed)
    _emit("".join(r.line() + "\n" for r in rows), args.output)
    return EXIT_OK


VERBS = {"solve": cmd_solve, "scan": cmd_scan, "oracle": cmd_oracle,
         "verify": cmd_verify, "gen": cmd_gen, "ratio": cmd_ratio}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matchaug", description="5/3-approximation for matching augmentation")
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("--input", action="append", default=[], help="instance file (repeatable)")
    ap.add_argument("--output", help="write the text report here instead of stdout")
    ap.add_argument("--json", help="also write a structured report (solve only)")
    ap.add_argument("--solution", help="solution file for verify")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family")
    ap.add_argument("--param", action="append", help="integer, list a,b or range a-b")
    ap.add_argument("--budget-nodes", type=int, default=16, help="largest instance the exact oracle accepts")
    ap.add_argument("--jobs", type=int, default=1, help="parallel workers for batch solve")
    ap.add_argument("--trace", action="store_true", help="include decomposition, ear and merge traces")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.verb in ("solve", "scan", "oracle", "verify") and not args.input:
        log.error("%s needs --input", args.verb)
        return EXIT_INVALID
    try:
        return VERBS[args.verb](args)
    except (ValidationError, ValueError, OSError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INVALID
    except InvariantBreach as exc:
        log.error("invariant breach: %s", exc)
        if exc.instance is not None:
            sys.stderr.write(format_instance(exc.instance, comment="offending instance"))
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
