"""Command-line front end.

Subcommands: ``check`` (dependency satisfaction against a database file),
``entail`` (dichotomy-based entailment with proof or countermodel),
``chase`` (classical or additive chase with optional trace output),
``classify`` (monoid property report), and ``oracle`` (bounded brute-force
search from a JSON configuration).

Exit codes: 0 yes / success, 1 no (violation found, not entailed, or a
counterexample exists), 2 input error, 3 step budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .chase import (
    ChaseConfig,
    OUTCOME_TERMINATED,
    canonical_start_classical,
    canonical_start_plus,
    classical_chase,
    plus_chase,
    trace_to_json,
)
from .entail import decide_entailment
from .errors import ChaseBudgetExceeded, KindbError
from .ind import format_ind, infer_schema, load_ind_file, parse_ind, satisfies
from .infer import RuleSystem, derives, proof_to_json, proof_to_text
from .kdb import KDatabase, load_database_file
from .monoid import parse_monoid, table_from_dict
from .oracle import brute_force_balanced_entails, brute_force_entails

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_monoid_arg(spec: str):
    if spec.endswith(".json"):
        with open(spec, "r", encoding="utf-8") as fh:
            return table_from_dict(json.load(fh))
    return parse_monoid(spec)


def format_database(db: KDatabase) -> str:
    """Plain-text rendering, one aligned table per relation."""
    blocks = []
    for rel in sorted(db.relations):
        kr = db.relations[rel]
        header = list(kr.attributes) + ["#"]
        rows = [list(row) + [db.monoid.format_element(w)]
                for row, w in sorted(kr.weights.items())]
        widths = [max(len(str(cell)) for cell in col)
                  for col in zip(*([header] + rows))] if rows else [len(h) for h in header]
        lines = [rel]
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def format_steps(trace, limit: int = 40) -> str:
    """One row per chase step, in the order applied."""
    m = trace.start.monoid
    rows = []
    for step in trace.steps[:limit]:
        delta = "" if step.delta is None else f" +{m.format_element(step.delta)}"
        rows.append(f"  {step.sigma.rhs_rel}({', '.join(step.incremented)}){delta}"
                    f"   by {format_ind(step.sigma)} at ({', '.join(step.witness)})")
    if len(trace.steps) > limit:
        rows.append(f"  ... {len(trace.steps) - limit} further steps")
    return "\n".join(rows)


def cmd_check(args) -> int:
    db = load_database_file(args.database)
    sigmas = load_ind_file(args.inds, db.schema)
    results = {format_ind(s): satisfies(db, s) for s in sigmas}
    if args.json:
        _print_json({"results": results})
    else:
        for text, ok in results.items():
            print(f"{'OK      ' if ok else 'VIOLATED'} {text}")
    return EXIT_YES if all(results.values()) else EXIT_NO


def cmd_entail(args) -> int:
    sigma = set(load_ind_file(args.sigma))
    tau = parse_ind(args.tau)
    schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    if args.system is not None:
        # syntactic mode: decide derivability in the requested rule system
        ok, proof = derives(sigma, tau, RuleSystem(args.system), schema)
        payload = {"derivable": ok, "system": args.system}
        if proof is not None:
            payload["proof"] = proof_to_json(proof)
        _print_json(payload)
        return EXIT_YES if ok else EXIT_NO
    m = _load_monoid_arg(args.monoid)
    verdict = decide_entailment(sigma, tau, m, balanced=args.balanced,
                                config=ChaseConfig(step_limit=args.step_limit),
                                schema=schema)
    _print_json(verdict.to_json())
    if not args.json and verdict.proof is not None:
        print(proof_to_text(verdict.proof), file=sys.stderr)
    return EXIT_YES if verdict.entailed else EXIT_NO


def cmd_chase(args) -> int:
    sigma = load_ind_file(args.sigma)
    if args.start.startswith("canonical:"):
        tau = parse_ind(args.start[len("canonical:"):])
        schema = infer_schema(sorted(set(sigma) | {tau}, key=format_ind))
        start = (canonical_start_plus(tau, schema) if args.plus
                 else canonical_start_classical(tau, schema))
    else:
        start = load_database_file(args.start)
    if args.plus:
        trace = plus_chase(start, sigma, ChaseConfig(step_limit=args.step_limit))
    else:
        _, trace = classical_chase(start, sigma)
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            json.dump(trace_to_json(trace), fh, indent=2, sort_keys=True)
    if args.json:
        _print_json(trace_to_json(trace))
    else:
        print(f"outcome: {trace.outcome} after {len(trace.steps)} steps")
        if trace.steps:
            print(format_steps(trace))
            print()
        print(format_database(trace.result))
    return EXIT_YES if trace.outcome == OUTCOME_TERMINATED else EXIT_BUDGET


def cmd_classify(args) -> int:
    m = _load_monoid_arg(args.monoid)
    report = m.classify(args.k_bound)
    _print_json({"monoid": m.name, **report.as_dict()})
    return EXIT_YES


def cmd_oracle(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    try:
        m = parse_monoid(config["monoid"])
        sigma = {parse_ind(t) for t in config["sigma"]}
        tau = parse_ind(config["tau"])
        adom = config["adom"]
        pool = [m.parse_element(str(w)) for w in config["weight_pool"]]
        max_tuples = int(config["max_tuples"])
    except KeyError as exc:
        raise KindbError(f"oracle config is missing {exc}") from None
    search = (brute_force_balanced_entails if config.get("balanced")
              else brute_force_entails)
    found = search(sigma, tau, m, adom=adom, weight_pool=pool,
                   max_tuples=max_tuples,
                   max_candidates=int(config.get("max_candidates", 2_000_000)))
    if found is None:
        _print_json({"counterexample": None})
        return EXIT_YES
    _print_json({"counterexample": found.to_json()})
    return EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kindb",
        description="Inclusion-dependency reasoning over monoid-annotated databases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check a dependency list against a database")
    p_check.add_argument("database", help="database JSON file")
    p_check.add_argument("inds", help="dependency list file")
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_entail = sub.add_parser("entail", help="decide entailment")
    p_entail.add_argument("sigma", help="assumption list file")
    p_entail.add_argument("tau", help="query dependency text")
    p_entail.add_argument("--monoid", default="naturals")
    p_entail.add_argument("--balanced", action="store_true")
    p_entail.add_argument("--step-limit", type=int, default=10_000)
    p_entail.add_argument("--system", choices=[s.value for s in RuleSystem],
                          help="decide pure derivability in this rule system instead")
    p_entail.add_argument("--json", action="store_true")
    p_entail.set_defaults(func=cmd_entail)

    p_chase = sub.add_parser("chase", help="run a chase")
    p_chase.add_argument("start", help="database JSON file or canonical:<dependency>")
    p_chase.add_argument("sigma", help="dependency list file")
    p_chase.add_argument("--plus", action="store_true", help="run the additive chase")
    p_chase.add_argument("--step-limit", type=int, default=10_000)
    p_chase.add_argument("--trace-out", help="write the JSON trace here")
    p_chase.add_argument("--json", action="store_true")
    p_chase.set_defaults(func=cmd_chase)

    p_classify = sub.add_parser("classify", help="report monoid properties")
    p_classify.add_argument("monoid", help="builtin name, monogenic:m0,l, or table JSON file")
    p_classify.add_argument("--k-bound", type=int, default=8)
    p_classify.set_defaults(func=cmd_classify)

    p_oracle = sub.add_parser("oracle", help="bounded counterexample search")
    p_oracle.add_argument("config", help="search-space JSON configuration")
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ChaseBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (KindbError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
