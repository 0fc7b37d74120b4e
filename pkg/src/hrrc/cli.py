"""Command-line frontend.

Subcommands: classify, solve, check, brute, reduce, decode.  Exit codes are
the machine contract: 0 for a positive verdict, 1 for a negative one (no
matching exists / not strongly stable / unsatisfiable), 2 for usage or input
errors and for instances the solver cannot decide.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import exhaustive, poly_solvers, reductions, stability
from .model import (
    Assignment,
    Instance,
    InstanceError,
    SolveOutcome,
    classify,
    instance_to_doc,
    load_instance,
    load_matching,
    matching_to_doc,
    save_instance,
    save_matching,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _default_brute_limit() -> int:
    raw = os.environ.get("HRRC_BRUTE_LIMIT")
    if raw is None:
        return poly_solvers.DEFAULT_BRUTE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"HRRC_BRUTE_LIMIT must be an integer, got {raw!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _cmd_classify(args: argparse.Namespace) -> int:
    instance = load_instance(_read(args.instance))
    cls = classify(instance)
    if args.json:
        _emit_json(
            {"alpha": cls.alpha, "beta": cls.beta, "gamma": cls.gamma, "disjoint": cls.disjoint}
        )
    else:
        print(str(cls))
    return EXIT_OK


_ALGORITHMS = {
    "alg1": poly_solvers.solve_regions_size1,
    "alg2": poly_solvers.solve_res_len1,
    "alg3": poly_solvers.solve_hosp_len1,
    "alg4": poly_solvers.solve_2x2_free,
}


def _solve_outcome(instance: Instance, args: argparse.Namespace) -> SolveOutcome:
    name = args.algorithm
    if name == "auto":
        return poly_solvers.dispatch(instance, brute_limit=args.brute_limit)
    if name == "alg5":
        return poly_solvers.solve_222_disjoint(instance)
    if name == "brute":
        return exhaustive.exists_strongly_stable(instance)
    return SolveOutcome.found(_ALGORITHMS[name](instance))


def _report_outcome(outcome: SolveOutcome, args: argparse.Namespace) -> int:
    if args.json:
        payload: dict = {"status": outcome.status}
        if outcome.matching is not None:
            payload["matching"] = matching_to_doc(outcome.matching)
        if outcome.reason is not None:
            payload["reason"] = outcome.reason
        _emit_json(payload)
    else:
        print(outcome.status)
        if outcome.is_found:
            assert outcome.matching is not None
            text = save_matching(outcome.matching)
            out = getattr(args, "out", None)
            if out:
                Path(out).write_text(text, encoding="utf-8")
            else:
                print(text, end="")
        elif outcome.reason:
            print(outcome.reason, file=sys.stderr)
    if outcome.is_found:
        return EXIT_OK
    return EXIT_NEGATIVE if outcome.status == "none-exists" else EXIT_ERROR


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(_read(args.instance))
    outcome = _solve_outcome(instance, args)
    return _report_outcome(outcome, args)


def _cmd_check(args: argparse.Namespace) -> int:
    instance = load_instance(_read(args.instance))
    matching = load_matching(_read(args.matching))
    violations = stability.matching_violations(instance, matching)
    if violations:
        raise InstanceError("assignment is not a matching: " + "; ".join(violations))
    feasible = stability.is_feasible(instance, matching)
    bps = stability.blocking_pairs(instance, matching)
    sbps = stability.strong_blocking_pairs(instance, matching) if feasible else []
    stable = feasible and not sbps
    if args.json:
        _emit_json(
            {
                "feasible": feasible,
                "strongly_stable": stable,
                "blocking_pairs": [[r, h] for r, h in bps],
                "strong_blocking_pairs": [
                    {
                        "resident": w.resident,
                        "hospital": w.hospital,
                        "conditions": w.conditions(),
                    }
                    for w in sbps
                ],
            }
        )
    else:
        print(f"feasible: {'yes' if feasible else 'no'}")
        print(f"blocking pairs: {len(bps)}")
        for r, h in bps:
            print(f"  ({r}, {h})")
        if feasible:
            print(f"strong blocking pairs: {len(sbps)}")
            for w in sbps:
                print(f"  ({w.resident}, {w.hospital}) via {', '.join(w.conditions())}")
        print(f"strongly stable: {'yes' if stable else 'no'}")
    return EXIT_OK if stable else EXIT_NEGATIVE


def _cmd_brute(args: argparse.Namespace) -> int:
    instance = load_instance(_read(args.instance))
    size = len(instance.residents) + len(instance.hospitals)
    if size > args.limit and not args.force:
        print(
            f"instance has {size} agents, above the brute-force cap of {args.limit}; "
            "pass --force to search anyway",
            file=sys.stderr,
        )
        return EXIT_ERROR
    if args.all:
        matchings = sorted(
            exhaustive.strongly_stable_set(instance), key=lambda m: m.sorted_pairs()
        )
        if args.json:
            _emit_json(
                {
                    "status": "found" if matchings else "none-exists",
                    "count": len(matchings),
                    "matchings": [matching_to_doc(m) for m in matchings],
                }
            )
        else:
            print(f"strongly stable matchings: {len(matchings)}")
            for m in matchings:
                print(json.dumps(matching_to_doc(m)))
        return EXIT_OK if matchings else EXIT_NEGATIVE
    return _report_outcome(exhaustive.exists_strongly_stable(instance), args)


def _target_variant(name: str) -> reductions.ReductionVariant:
    return reductions.ReductionVariant(name)


def _reduced_instance(args: argparse.Namespace) -> tuple[
    reductions.CnfFormula, Instance, reductions.OccurrenceTable | None
]:
    formula = reductions.parse_dimacs(_read(args.cnf))
    variant = _target_variant(args.target)
    if variant is reductions.ReductionVariant.ONE_IN_THREE_222:
        if args.normalize_ppn:
            raise InstanceError("--normalize-ppn applies only to ppn-* targets")
        return formula, reductions.reduce_oneinthree(formula), None
    if args.normalize_ppn:
        formula, _origins = reductions.to_ppn(formula)
    instance, table = reductions.reduce_ppn(formula, variant)
    return formula, instance, table


def _cmd_reduce(args: argparse.Namespace) -> int:
    try:
        _formula, instance, table = _reduced_instance(args)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    if args.json:
        payload = {"instance": instance_to_doc(instance)}
        if table is not None:
            payload["occurrences"] = table.to_doc()
        _emit_json(payload)
        return EXIT_OK
    text = save_instance(instance)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    if args.occurrences:
        if table is None:
            raise InstanceError("the one-in-three target has no occurrence table")
        Path(args.occurrences).write_text(
            json.dumps(table.to_doc(), indent=2) + "\n", encoding="utf-8"
        )
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    try:
        formula, instance, _table = _reduced_instance(args)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    matching = load_matching(_read(args.matching))
    if not stability.is_strongly_stable(instance, matching):
        print("matching is not strongly stable on the reduced instance", file=sys.stderr)
        return EXIT_NEGATIVE
    variant = _target_variant(args.target)
    assignment = reductions.decode_matching(formula, matching, variant)
    if args.json:
        _emit_json({"assignment": {str(i): assignment[i] for i in sorted(assignment)}})
    else:
        print(" ".join(f"x{i}={int(assignment[i])}" for i in sorted(assignment)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrrc",
        description="Strong stability under regional caps: check, solve, reduce.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the instance's parameter class")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="find a strongly stable matching or report none exists")
    p.add_argument("instance")
    p.add_argument(
        "--algorithm",
        choices=["auto", "alg1", "alg2", "alg3", "alg4", "alg5", "brute"],
        default="auto",
    )
    p.add_argument("--brute-limit", type=int, default=_default_brute_limit())
    p.add_argument("--out", help="write a found matching document here instead of stdout")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="report feasibility and (strong) blocking pairs")
    p.add_argument("instance")
    p.add_argument("matching")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("brute", help="exhaustively decide existence on a small instance")
    p.add_argument("instance")
    p.add_argument("--all", action="store_true", help="list every strongly stable matching")
    p.add_argument("--force", action="store_true", help="ignore the size cap")
    p.add_argument("--limit", type=int, default=_default_brute_limit())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_brute)

    targets = [v.value for v in reductions.ReductionVariant]

    p = sub.add_parser("reduce", help="translate a DIMACS CNF into a matching instance")
    p.add_argument("cnf")
    p.add_argument("--target", choices=targets, required=True)
    p.add_argument(
        "--normalize-ppn",
        action="store_true",
        help="rewrite the formula into 2-positive/1-negative shape first",
    )
    p.add_argument("--out", help="write the instance document here instead of stdout")
    p.add_argument("--occurrences", help="write the occurrence-table sidecar here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("decode", help="read a satisfying assignment off a matching")
    p.add_argument("cnf")
    p.add_argument("matching")
    p.add_argument("--target", choices=targets, required=True)
    p.add_argument("--normalize-ppn", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decode)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, reductions.DimacsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
