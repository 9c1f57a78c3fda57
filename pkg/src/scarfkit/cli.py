"""Command-line entry point.

Exit codes: 0 success or verified, 1 verified false, 2 invalid input,
3 internal assertion (a theoretical guarantee failed at runtime).
Machine output goes to stdout (or ``-o``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import io as fileio
from .bench import bench, records_to_csv
from .core import canonicalize, solve, verify_solution
from .exceptions import InternalAssertion, InvalidInstance
from .fspp import (
    digraph_to_fspp,
    fspp_solution_to_kernel,
    verify_eps_solution,
    verify_eps_stable,
    verify_feasible,
    verify_stable,
)
from .generators import gen_clique_acyclic_digraph, gen_directed_cycle, gen_random_scarf
from .kernels import (
    compute_nash,
    reduce_to_scarf as reduce_digraph,
    solve_strong_kernel,
    verify_fractional_kernel,
    verify_nash,
    verify_strong_kernel,
)
from .matchings import (
    reduce_to_scarf as reduce_hypergraph,
    solve_stable_matching,
    verify_stable_matching,
)
from .oracle import DEFAULT_CAP, brute_solve, build_path_graph, enumerate_feasible_bases, enumerate_subordinating

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict(verdict) -> int:
    if verdict:
        print("verified", file=sys.stderr)
        return EXIT_OK
    for failure in verdict.failures:
        print(failure, file=sys.stderr)
    return EXIT_FALSE


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# scarf

def cmd_scarf_solve(args) -> int:
    inst = fileio.instance_from_json(fileio.read_json(args.instance))
    sol = solve(inst, cap=args.cap, assume_bounded=args.assume_bounded)
    data = fileio.solution_to_json(sol)
    if not args.emit_witness:
        data.pop("witness")
    print(f"pivots: {sol.n_pivots}", file=sys.stderr)
    _emit(fileio.dumps(data), args.output)
    return EXIT_OK


def cmd_scarf_verify(args) -> int:
    inst = fileio.instance_from_json(fileio.read_json(args.instance))
    sol = fileio.solution_from_json(fileio.read_json(args.solution))
    return _verdict(verify_solution(inst, sol))


# kernel

def cmd_kernel_solve(args) -> int:
    D = fileio.digraph_from_json(fileio.read_json(args.digraph))
    f = solve_strong_kernel(D, cap=args.cap, max_clique=args.max_clique)
    _emit(fileio.dumps(fileio.kernel_to_json(f)), args.output)
    return EXIT_OK


def cmd_kernel_verify(args) -> int:
    D = fileio.digraph_from_json(fileio.read_json(args.digraph))
    f = fileio.kernel_from_json(fileio.read_json(args.kernel), D)
    check = {"strong": verify_strong_kernel, "fractional": verify_fractional_kernel}[args.kind]
    verdict = check(D, f)
    if verdict and args.nash:
        verdict = verify_nash(D, f)
    return _verdict(verdict)


def cmd_kernel_nash(args) -> int:
    D = fileio.digraph_from_json(fileio.read_json(args.digraph))
    if args.kernel:
        W = fileio.kernel_from_json(fileio.read_json(args.kernel), D)
    else:
        W = solve_strong_kernel(D, cap=args.cap)
    f = compute_nash(D, W, iteration_cap=args.iteration_cap)
    _emit(fileio.dumps(fileio.kernel_to_json(f)), args.output)
    return EXIT_OK


# matching

def cmd_matching_solve(args) -> int:
    H = fileio.hypergraph_from_json(fileio.read_json(args.hypergraph))
    w = solve_stable_matching(H, cap=args.cap)
    _emit(fileio.dumps(fileio.matching_to_json(w)), args.output)
    return EXIT_OK


def cmd_matching_verify(args) -> int:
    H = fileio.hypergraph_from_json(fileio.read_json(args.hypergraph))
    w = fileio.matching_from_json(fileio.read_json(args.matching))
    return _verdict(verify_stable_matching(H, w))


# fspp

def cmd_fspp_verify(args) -> int:
    inst = fileio.fspp_from_json(fileio.read_json(args.instance))
    w = fileio.fspp_weights_from_json(fileio.read_json(args.weights), inst)
    if args.mode == "feasible":
        verdict = verify_feasible(inst, w)
    elif args.mode == "stable":
        verdict = verify_stable(inst, w)
    elif args.mode == "eps-solution":
        verdict = verify_eps_solution(inst, w, args.eps)
    else:
        verdict = verify_eps_stable(inst, w, args.eps)
    return _verdict(verdict)


def cmd_fspp_reduce(args) -> int:
    D = fileio.digraph_from_json(fileio.read_json(args.digraph))
    inst, _ = digraph_to_fspp(D, orientation=args.orientation)
    _emit(fileio.dumps(fileio.fspp_to_json(inst)), args.output)
    return EXIT_OK


def cmd_fspp_map(args) -> int:
    D = fileio.digraph_from_json(fileio.read_json(args.digraph))
    inst, mapping = digraph_to_fspp(D, orientation=args.orientation)
    w = fileio.fspp_weights_from_json(fileio.read_json(args.weights), inst)
    if not verify_stable(inst, w):
        print("warning: weights are not a fractional stable solution", file=sys.stderr)
    _emit(fileio.dumps(fileio.kernel_to_json(fspp_solution_to_kernel(w, mapping))), args.output)
    return EXIT_OK


# reduce

def cmd_reduce(args) -> int:
    data = fileio.read_json(args.source)
    if args.target == "digraph-to-scarf":
        inst, _ = reduce_digraph(fileio.digraph_from_json(data), max_clique=args.max_clique)
        out = fileio.instance_to_json(inst)
    elif args.target == "digraph-to-fspp":
        inst, _ = digraph_to_fspp(fileio.digraph_from_json(data), orientation=args.orientation)
        out = fileio.fspp_to_json(inst)
    else:
        inst, _ = reduce_hypergraph(fileio.hypergraph_from_json(data))
        out = fileio.instance_to_json(inst)
    _emit(fileio.dumps(out), args.output)
    return EXIT_OK


# oracle

def _one_based(sets) -> list[list[int]]:
    return [[j + 1 for j in J] for J in sets]


def cmd_oracle(args) -> int:
    inst = fileio.instance_from_json(fileio.read_json(args.instance))
    if args.action == "enumerate":
        out = {
            "feasible_bases": _one_based(enumerate_feasible_bases(inst, args.cap)),
            "subordinating": _one_based(enumerate_subordinating(canonicalize(inst), args.cap)),
        }
        _emit(fileio.dumps(out), args.output)
    elif args.action == "path-graph":
        graph = build_path_graph(inst, args.cap)
        for violation in graph.audit():
            print(violation, file=sys.stderr)
        _emit(graph.to_dot(), args.output)
    else:
        out = {"solutions": [fileio.solution_to_json(s) for s in brute_solve(inst, args.cap)]}
        _emit(fileio.dumps(out), args.output)
    return EXIT_OK


# gen / bench

def cmd_gen(args) -> int:
    if args.kind == "scarf":
        out = fileio.instance_to_json(gen_random_scarf(args.m, args.n, args.seed))
    elif args.kind == "digraph":
        out = fileio.digraph_to_json(gen_clique_acyclic_digraph(args.nv, args.arc_prob, args.rev_prob, args.seed))
    else:
        out = fileio.digraph_to_json(gen_directed_cycle(args.k))
    _emit(fileio.dumps(out), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = bench(args.corpus, cap=args.cap, timing=not args.no_timing, workers=args.workers)
    _emit(records_to_csv(records), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scarfkit", description="Scarf's lemma path-following toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(sub, name, func, help=None):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    def out(p):
        p.add_argument("-o", "--output", help="write here instead of stdout")

    scarf = groups.add_parser("scarf", help="solve or verify Scarf instances").add_subparsers(dest="action", required=True)
    p = command(scarf, "solve", cmd_scarf_solve)
    p.add_argument("instance")
    p.add_argument("--cap", type=int, help="pivot limit")
    p.add_argument("--assume-bounded", action="store_true", help="skip the B >= 0 boundedness test")
    p.add_argument("--emit-witness", action=argparse.BooleanOptionalAction, default=True)
    out(p)
    p = command(scarf, "verify", cmd_scarf_verify)
    p.add_argument("instance")
    p.add_argument("solution")

    kernel = groups.add_parser("kernel", help="fractional kernels of digraphs").add_subparsers(dest="action", required=True)
    p = command(kernel, "solve", cmd_kernel_solve)
    p.add_argument("digraph")
    p.add_argument("--cap", type=int)
    p.add_argument("--max-clique", type=int)
    out(p)
    p = command(kernel, "verify", cmd_kernel_verify)
    p.add_argument("digraph")
    p.add_argument("kernel")
    p.add_argument("--kind", choices=["strong", "fractional"], default="strong")
    p.add_argument("--nash", action="store_true", help="also require the Nash condition")
    p = command(kernel, "nash", cmd_kernel_nash)
    p.add_argument("digraph")
    p.add_argument("kernel", nargs="?", help="strong kernel to start from (default: solve one)")
    p.add_argument("--cap", type=int)
    p.add_argument("--iteration-cap", type=int, default=10_000)
    out(p)

    matching = groups.add_parser("matching", help="hypergraphic stable matchings").add_subparsers(dest="action", required=True)
    p = command(matching, "solve", cmd_matching_solve)
    p.add_argument("hypergraph")
    p.add_argument("--cap", type=int)
    out(p)
    p = command(matching, "verify", cmd_matching_verify)
    p.add_argument("hypergraph")
    p.add_argument("matching")

    fspp = groups.add_parser("fspp", help="fractional stable paths").add_subparsers(dest="action", required=True)
    p = command(fspp, "verify", cmd_fspp_verify)
    p.add_argument("instance")
    p.add_argument("weights")
    p.add_argument("--mode", choices=["stable", "feasible", "eps-solution", "eps-stable"], default="stable")
    p.add_argument("--eps", type=_fraction, default=Fraction(0))
    for name, func in (("reduce", cmd_fspp_reduce), ("map", cmd_fspp_map)):
        p = command(fspp, name, func)
        p.add_argument("digraph")
        if name == "map":
            p.add_argument("weights")
        p.add_argument("--orientation", choices=["in", "out"], default="in")
        out(p)

    reduce = groups.add_parser("reduce", help="problem reductions").add_subparsers(dest="target", required=True)
    for name in ("digraph-to-scarf", "digraph-to-fspp", "hypergraph-to-scarf"):
        p = command(reduce, name, cmd_reduce)
        p.add_argument("source")
        p.add_argument("--max-clique", type=int)
        p.add_argument("--orientation", choices=["in", "out"], default="in")
        out(p)

    oracle = groups.add_parser("oracle", help="brute-force checks").add_subparsers(dest="action", required=True)
    for name in ("enumerate", "path-graph", "brute-solve"):
        p = command(oracle, name, cmd_oracle)
        p.add_argument("instance")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        out(p)

    gen = groups.add_parser("gen", help="seeded instance generators").add_subparsers(dest="kind", required=True)
    p = command(gen, "scarf", cmd_gen)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    out(p)
    p = command(gen, "digraph", cmd_gen)
    p.add_argument("--nv", type=int, required=True)
    p.add_argument("--arc-prob", type=float, default=0.5)
    p.add_argument("--rev-prob", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    out(p)
    p = command(gen, "cycle", cmd_gen)
    p.add_argument("--k", type=int, required=True)
    out(p)

    p = groups.add_parser("bench", help="solve a corpus directory and emit CSV")
    p.set_defaults(func=cmd_bench)
    p.add_argument("corpus")
    p.add_argument("--cap", type=int)
    p.add_argument("--no-timing", action="store_true", help="leave wall_time empty for byte-stable output")
    p.add_argument("--workers", type=int, default=1)
    out(p)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InternalAssertion as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InvalidInstance, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
