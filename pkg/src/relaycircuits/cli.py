"""Command-line surface over the library.

Subcommands: synth, eval, oracle-eval, dual, bound, robustness, upg,
lattice-search, render. Machine-readable output is JSON on stdout with
rationals as lowest-term strings; diagnostics go to stderr. Exit codes:
0 success, 2 validation error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import netlist
from .bounds import complexity_bound, complexity_bound_recursive
from .circuits import (
    CapacityError, Circuit, Distribution, RelayError, count_switches, dual,
    evaluate, evaluate_oracle,
)
from .lattice import (
    LatticeDistribution, SearchSpec, lattice_from_json, search_expressible,
)
from .rational import RationalParseError, format_rational, parse_rational, parse_rational_list
from .render import ascii_render, dot_render
from .robustness import check_bounds, worst_case_error
from .synthesis import (
    composite_synthesis, denominator_reduction, state_reduction,
    synth_binary_nstate,
)
from .upg import CONSTRUCTIONS, UpgSpec, build_upg, encode_input, upg_truth_table

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _parse_assignment(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        name, _, value = item.partition("=")
        if not _:
            raise RationalParseError(f"assignment item {item!r} is not name=state")
        out[name.strip()] = int(value)
    return out


def _load_netlist(path: str) -> Circuit:
    return netlist.load(path)


def _cmd_synth(args) -> int:
    target = Distribution(parse_rational_list(args.target))
    method = args.method
    if method == "binary":
        report = synth_binary_nstate(target)
    elif method == "state":
        report = state_reduction(target)
    elif method == "denom":
        report = denominator_reduction(target, base=args.base)
    elif method == "composite":
        report = composite_synthesis(target, base=args.base)
    else:  # pragma: no cover - argparse choices guard this
        raise RationalParseError(f"unknown method {method!r}")
    _emit(report.to_json())
    return EXIT_OK


def _cmd_eval(args, oracle: bool) -> int:
    circuit = _load_netlist(args.netlist)
    assignment = _parse_assignment(args.assign)
    if oracle:
        dist = evaluate_oracle(circuit, assignment, max_outcomes=args.max_outcomes)
    else:
        dist = evaluate(circuit, assignment, graph_cap=args.graph_cap)
    _emit([format_rational(p) for p in dist])
    return EXIT_OK


def _cmd_dual(args) -> int:
    circuit = _load_netlist(args.netlist)
    _emit(netlist.circuit_to_json(dual(circuit)))
    return EXIT_OK


def _cmd_bound(args) -> int:
    closed = complexity_bound(args.n, args.states)
    recursive = complexity_bound_recursive(args.n, args.states)
    if closed != recursive:  # pragma: no cover - the two always agree
        raise RelayError(f"closed form {closed} != recursion {recursive}")
    sys.stdout.write(f"{closed}\n")
    return EXIT_OK


def _cmd_robustness(args) -> int:
    circuit = _load_netlist(args.netlist)
    epsilon = parse_rational(args.epsilon)
    mode = "sampled" if args.mode == "sample" else args.mode
    report = worst_case_error(circuit, epsilon, mode=mode,
                              trials=args.trials, seed=args.seed)
    payload = report.to_json()
    if args.family:
        family, _, q = args.family.partition(":")
        verdict = check_bounds(report, family, int(q) if q else 2)
        payload.update(verdict.to_json())
    _emit(payload)
    return EXIT_OK


def _cmd_upg(args) -> int:
    spec = UpgSpec(args.states, args.bits, args.construction)
    if args.truth_table:
        rows = []
        for row, out in upg_truth_table(spec, graph_cap=args.graph_cap):
            rows.append({"inputs": row.display(),
                         "output": [format_rational(p) for p in out]})
        _emit(rows)
        return EXIT_OK
    circuit = build_upg(spec)
    payload = {"netlist": netlist.circuit_to_json(circuit)}
    psw, dets, inputs = count_switches(circuit)
    payload["counts"] = {"pswitches": psw, "deterministic": dets, "inputs": inputs}
    if args.target:
        target = Distribution(parse_rational_list(args.target))
        row = encode_input(target, args.bits)
        payload["inputs"] = row.display()
        payload["output"] = [
            format_rational(p)
            for p in evaluate(circuit, row.assignment(), graph_cap=args.graph_cap)]
    _emit(payload)
    return EXIT_OK


def _cmd_lattice_search(args) -> int:
    with open(args.lattice, "r", encoding="utf-8") as fh:
        lattice = lattice_from_json(json.load(fh))
    target = LatticeDistribution(lattice, parse_rational_list(args.target))
    with open(args.switchset, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    switch_set = tuple(
        LatticeDistribution(lattice, [parse_rational(str(p)) for p in row])
        for row in raw)
    spec = SearchSpec(lattice, switch_set, target,
                      max_switches=args.max_switches,
                      include_deterministic=not args.no_deterministic)
    _emit(search_expressible(spec).to_json())
    return EXIT_OK


def _cmd_render(args) -> int:
    circuit = _load_netlist(args.netlist)
    if args.format == "dot":
        sys.stdout.write(dot_render(circuit))
    else:
        sys.stdout.write(ascii_render(circuit) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaycircuits",
        description="Synthesize, evaluate, and analyze multivalued stochastic relay circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a circuit for a rational target")
    p.add_argument("--target", required=True, help='comma-separated rationals, e.g. "5/8,1/4,1/8"')
    p.add_argument("--method", choices=["binary", "state", "denom", "composite"],
                   default="binary")
    p.add_argument("--base", type=int, default=None, help="denominator base q (denom/composite)")

    for name in ("eval", "oracle-eval"):
        p = sub.add_parser(name, help=f"{name} a netlist")
        p.add_argument("--netlist", required=True)
        p.add_argument("--assign", default="", help='input bindings, e.g. "r0=1,r1=0"')
        p.add_argument("--graph-cap", type=int, default=20)
        p.add_argument("--max-outcomes", type=int, default=1 << 20)

    p = sub.add_parser("dual", help="emit the dual netlist")
    p.add_argument("--netlist", required=True)

    p = sub.add_parser("bound", help="pswitch-count bound f(n, N)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--states", type=int, required=True)

    p = sub.add_parser("robustness", help="worst-case error under switch noise")
    p.add_argument("--netlist", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--mode", choices=["corners", "sample", "sampled"],
                   default="corners")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", default=None,
                   help='check bounds for "binary" or "denom:q"')

    p = sub.add_parser("upg", help="build a universal probability generator")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--construction", choices=list(CONSTRUCTIONS), default="reduced_sp")
    p.add_argument("--truth-table", action="store_true")
    p.add_argument("--target", default=None, help="dyadic target to encode and evaluate")
    p.add_argument("--graph-cap", type=int, default=64)

    p = sub.add_parser("lattice-search", help="search sp expressibility on a lattice")
    p.add_argument("--lattice", required=True, help="lattice JSON file")
    p.add_argument("--target", required=True, help="comma-separated rationals in element order")
    p.add_argument("--switchset", required=True, help="JSON file: list of distributions")
    p.add_argument("--max-switches", type=int, default=4)
    p.add_argument("--no-deterministic", action="store_true")

    p = sub.add_parser("render", help="render a netlist as ascii or DOT")
    p.add_argument("--netlist", required=True)
    p.add_argument("--format", choices=["dot", "ascii"], default="ascii")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "synth":
            return _cmd_synth(args)
        if args.command == "eval":
            return _cmd_eval(args, oracle=False)
        if args.command == "oracle-eval":
            return _cmd_eval(args, oracle=True)
        if args.command == "dual":
            return _cmd_dual(args)
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "robustness":
            return _cmd_robustness(args)
        if args.command == "upg":
            return _cmd_upg(args)
        if args.command == "lattice-search":
            return _cmd_lattice_search(args)
        if args.command == "render":
            return _cmd_render(args)
        parser.error(f"unknown command {args.command!r}")  # pragma: no cover
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (RelayError, RationalParseError, OSError, ValueError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK  # pragma: no cover


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
