"""Command line entry point (``tihany-kit``)."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..chromatic import DEFAULT_NODE_LIMIT, BudgetExceeded, chromatic_index
from ..proof_engine import DEFAULT_STRATEGIES, SplitStrategy, attempt_extension
from ..tihany import (
    HypothesisError,
    VerificationInstance,
    Verifier,
    admissible_floor,
    probe_f,
    verify_all_st,
)
from .batch import batch_verify
from .families import generate, parse_family
from .io import EdgeListError, read_edge_list, write_edge_list

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CANDIDATE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _strategies(text: str):
    try:
        return tuple(SplitStrategy(s.strip()) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{exc}; choose from {', '.join(s.value for s in SplitStrategy)}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tihany-kit", description="Edge colouring and Tihany-type verification for multigraphs.")
    parser.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT, help="search node cap per solver call")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chi-index", help="print the chromatic index")
    p.add_argument("file")

    p = sub.add_parser("omega-prime", help="print omega' = max(tau, Delta) = omega(L(G))")
    p.add_argument("file")

    p = sub.add_parser("verify", help="search witness cliques for every admissible (s, t)")
    p.add_argument("file")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--json", action="store_true", help="one JSON record per report")

    p = sub.add_parser("batch", help="verify a generated family into a JSONL report")
    p.add_argument("--family", required=True, help="e.g. enumerate:5,8,3 or multicycle:5,3")
    p.add_argument("--ell", type=int, nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--workers", type=int, help="worker processes (default: $TIHANY_KIT_WORKERS or 1)")

    p = sub.add_parser("extend", help="run the colouring-extension engine and print its outcome as JSON")
    p.add_argument("file")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument(
        "--strategy",
        type=_strategies,
        default=DEFAULT_STRATEGIES,
        help="comma-separated split strategies in order (spread, single-star, half-fill)",
    )

    p = sub.add_parser("gen", help="write a family as .el files")
    p.add_argument("--family", required=True)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("probe-f", help="least b with witnesses for all pairs s, t >= b")
    p.add_argument("file")
    p.add_argument("--ell", type=int, required=True)
    return parser


def _load(path: str):
    try:
        return read_edge_list(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except EdgeListError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cmd_verify(args) -> int:
    g = _load(args.file)
    verifier = Verifier(node_limit=args.node_limit)
    chi = verifier.chi(g)
    omega = g.stats().omega_prime
    if chi <= omega:
        print(f"hypothesis not met: chi' = {chi} <= omega' = {omega}; nothing to verify")
        return EXIT_OK
    if (args.s is None) != (args.t is None):
        raise UsageError("--s and --t go together")
    if args.s is not None:
        lo = admissible_floor(args.ell)
        if args.s + args.t != chi + 1 or min(args.s, args.t) < lo:
            raise UsageError(f"(s, t) must satisfy s + t = {chi + 1} and s, t >= {lo}")
        reports = [verifier.verify(VerificationInstance(g, args.s, args.t, args.ell))]
    else:
        reports = verify_all_st(g, args.ell, verifier, chi=chi)
        if not reports:
            print(f"chi' = {chi}: no admissible (s, t) at ell = {args.ell}")
    code = EXIT_OK
    for r in reports:
        i = r.instance
        if args.json:
            from .batch import graph_key_hex, report_record

            print(json.dumps(report_record(graph_key_hex(g), r), sort_keys=True))
        elif r.outcome == "witness":
            print(f"(s,t)=({i.s},{i.t}) ell={i.ell}: witness {list(r.witness)} chi'(G-Q)={r.chi_prime_after}"
                  f" after {r.cliques_tested} cliques")
        else:
            print(f"(s,t)=({i.s},{i.t}) ell={i.ell}: {r.outcome}")
        if r.outcome == "counterexample_candidate":
            code = EXIT_CANDIDATE
        elif r.outcome == "budget_exceeded" and code == EXIT_OK:
            code = EXIT_BUDGET
    return code


def _cmd_batch(args) -> int:
    spec = parse_family(args.family)
    summary = batch_verify(
        generate(spec),
        args.ell,
        args.out,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        workers=args.workers,
        node_limit=args.node_limit,
    )
    print(json.dumps(summary.as_dict(), sort_keys=True))
    if summary.counterexample_candidates:
        return EXIT_CANDIDATE
    if summary.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_extend(args) -> int:
    g = _load(args.file)
    try:
        outcome = attempt_extension(g, args.s, args.t, args.ell, strategies=args.strategy, node_limit=args.node_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(outcome.to_json(), indent=2))
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = parse_family(args.family)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for i, g in enumerate(generate(spec)):
        write_edge_list(g, out / f"{spec.label()}_{i:05d}.el")
        count += 1
    print(f"wrote {count} graphs to {out}")
    return EXIT_OK


def _cmd_probe(args) -> int:
    g = _load(args.file)
    b = probe_f(g, args.ell, Verifier(node_limit=args.node_limit))
    print("none" if b is None else b)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "chi-index":
            print(chromatic_index(_load(args.file), node_limit=args.node_limit))
            return EXIT_OK
        if args.command == "omega-prime":
            print(_load(args.file).stats().omega_prime)
            return EXIT_OK
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "batch":
            return _cmd_batch(args)
        if args.command == "extend":
            return _cmd_extend(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "probe-f":
            return _cmd_probe(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_OK
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
