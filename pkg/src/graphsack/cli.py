"""Command-line front end: solve, generate, verify, decompose.

stdout carries machine-readable JSON only; diagnostics go to stderr
via logging (level picked by the GK_LOG environment variable).  Exit
codes: 0 solved/feasible, 1 infeasible, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional

from . import errors, generators, reductions
from .approx import fptas_optimize
from .connected import solve_connected
from .decomposition import (build_nice_decomposition,
                            elimination_order_minfill,
                            validate_nice_decomposition)
from .model import (Instance, SolveReport, Variant, build_report,
                    instance_from_json, instance_to_json, verify_solution)
from .oracles import oracle_for
from .paths import (solve_path_color_sweep, solve_path_tree,
                    solve_path_treewidth)
from .shortest import solve_shortest_path

log = logging.getLogger("graphsack")

# stats entries that vary run to run and would break byte-reproducibility
_NONDETERMINISTIC_STATS = ("wall_time",)


def _setup_logging() -> None:
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(os.environ.get("GK_LOG", "error"),
                                         logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(fh.read())


def _is_forest(inst: Instance) -> bool:
    parent = list(range(inst.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in inst.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _pick_engine(inst: Instance, engine: str) -> str:
    if engine != "auto":
        return engine
    if inst.variant is Variant.SHORTEST_PATH:
        return "labels"
    if inst.variant is Variant.PATH and _is_forest(inst):
        return "tree"
    return "treewidth"


_ENGINE_VARIANTS = {
    "treewidth": {Variant.CONNECTED, Variant.PATH},
    "color": {Variant.PATH},
    "labels": {Variant.SHORTEST_PATH},
    "tree": {Variant.PATH, Variant.SHORTEST_PATH},
    "oracle": {Variant.CONNECTED, Variant.PATH, Variant.SHORTEST_PATH},
}


def _run_engine(inst: Instance, engine: str, seed: int,
                trials: Optional[int]) -> SolveReport:
    if engine == "treewidth":
        if inst.variant is Variant.CONNECTED:
            return solve_connected(inst, early_stop=inst.d is not None)
        return solve_path_treewidth(inst)
    if engine == "color":
        return solve_path_color_sweep(inst, seed=seed, trials=trials)
    if engine == "labels":
        return solve_shortest_path(inst)
    if engine == "tree":
        return solve_path_tree(inst)
    if engine == "oracle":
        frontier = oracle_for(inst)
        return build_report(inst, frontier, lambda pair: None, {})
    raise AssertionError(engine)


def _report_doc(report: SolveReport) -> dict:
    stats = {k: v for k, v in report.stats.items()
             if k not in _NONDETERMINISTIC_STATS}
    return {
        "feasible": report.feasible,
        "best_value": report.best_value,
        "witness": sorted(report.witness) if report.witness is not None
        else None,
        "frontier": [[w, a] for w, a in report.frontier],
        "stats": stats,
    }


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    if args.mode == "decision" and inst.d is None:
        raise errors.EngineMismatch("decision mode needs d in the instance")
    if args.mode == "optimize" and inst.d is not None:
        log.info("optimize mode: ignoring target d=%s", inst.d)
        inst = Instance(variant=inst.variant, n=inst.n, edges=inst.edges,
                        weight=inst.weight, value=inst.value, s=inst.s,
                        d=None, x=inst.x, y=inst.y, edge_cost=inst.edge_cost)
    engine = _pick_engine(inst, args.engine)
    if inst.variant not in _ENGINE_VARIANTS[engine]:
        raise errors.EngineMismatch(
            f"engine {engine} does not handle variant {inst.variant.value}")
    log.info("engine=%s variant=%s n=%d", engine, inst.variant.value, inst.n)

    for _ in range(max(0, args.repeat - 1)):
        _run_engine(inst, engine, args.seed, args.trials)
    if args.epsilon is not None:
        solver = lambda i: _run_engine(i, engine, args.seed, args.trials)
        report = fptas_optimize(inst, args.epsilon, solver)
    else:
        report = _run_engine(inst, engine, args.seed, args.trials)
    _emit(_report_doc(report))
    return 0 if report.feasible else 1


def cmd_generate(args) -> int:
    provenance = None
    if args.reduction is not None:
        out = _make_reduction(args)
        inst, provenance = out.instance, out.provenance
    else:
        if args.n < 1:
            raise errors.BadInstanceJson("--n must be positive")
        inst = generators.random_instance(
            Variant(args.variant), args.random, args.n, args.seed,
            max_weight=args.max_weight, max_value=args.max_value,
            p=args.p, decision=args.decision)
    text = instance_to_json(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if provenance is not None:
            side = args.output + ".provenance.json"
            with open(side, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(provenance, indent=2, sort_keys=True)
                         + "\n")
        log.info("wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return 0


def _load_source_graph(path: str) -> reductions.SourceGraph:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return reductions.SourceGraph(doc["n"],
                                  tuple(tuple(e) for e in doc["edges"]))


def _load_items(path: str) -> reductions.KnapsackItems:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return reductions.KnapsackItems(tuple(doc["sizes"]),
                                    tuple(doc["profits"]),
                                    doc["capacity"], doc["target"])


def _make_reduction(args) -> reductions.ReductionOutput:
    name = args.reduction
    if name in ("vc", "pvc", "ham"):
        if not args.source_graph:
            raise errors.BadInstanceJson(f"--reduction {name} needs "
                                         "--source-graph")
        graph = _load_source_graph(args.source_graph)
        if name == "vc":
            return reductions.reduce_vertex_cover_to_connected(graph, args.k)
        if name == "pvc":
            return reductions.reduce_partial_vc_to_connected(graph, args.k,
                                                             args.ell)
        return reductions.reduce_hamiltonian_to_path(graph, args.x, args.y)
    if not args.items:
        raise errors.BadInstanceJson(f"--reduction {name} needs --items")
    items = _load_items(args.items)
    if name == "star":
        return reductions.reduce_knapsack_to_star_connected(items)
    return reductions.reduce_knapsack_to_path_gadget(
        items, Variant(args.variant) if args.variant != "connected"
        else Variant.PATH)


def cmd_verify(args) -> int:
    inst = _read_instance(args.input)
    with open(args.witness, "r", encoding="utf-8") as fh:
        witness = json.load(fh)
    if (not isinstance(witness, list)
            or any(not isinstance(v, int) for v in witness)):
        raise errors.BadInstanceJson("witness must be a JSON list of ints")
    result = verify_solution(inst, witness)
    _emit({"w": result.w, "alpha": result.alpha, "ok": result.ok,
           "reason": result.reason})
    return 0 if result.ok else 1


def cmd_decompose(args) -> int:
    inst = _read_instance(args.input)
    pinned = []
    if args.pin:
        try:
            pinned = [int(tok) for tok in args.pin.split(",")]
        except ValueError as exc:
            raise errors.BadInstanceJson(f"bad --pin value: {args.pin}") from exc
        for v in pinned:
            if not (0 <= v < inst.n):
                raise errors.IdOutOfRange(f"pin {v} out of range")
    order = elimination_order_minfill(inst, seed=args.seed)
    nd = build_nice_decomposition(inst, order, pinned)
    validate_nice_decomposition(inst, nd)
    _emit(nd.to_doc())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsack",
        description="Knapsack with graph constraints: connected subsets, "
                    "x-y paths, and shortest x-y paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", default="auto",
                   choices=["auto", "treewidth", "color", "labels", "tree",
                            "oracle"])
    p.add_argument("--mode", default="optimize",
                   choices=["decision", "optimize"])
    p.add_argument("--epsilon", default=None,
                   help="approximate mode, e.g. 1/4 or 0.25")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None,
                   help="color-coding trial budget per path length")
    p.add_argument("--repeat", type=int, default=1,
                   help="re-run the solver this many times (timing aid)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="emit a random or gadget instance")
    p.add_argument("--reduction", default=None,
                   choices=["vc", "star", "pvc", "ham", "ladder"])
    p.add_argument("--source-graph", default=None,
                   help="JSON {n, edges} for vc/pvc/ham")
    p.add_argument("--items", default=None,
                   help="JSON {sizes, profits, capacity, target} for "
                        "star/ladder")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--y", type=int, default=1)
    p.add_argument("--random", default="tree",
                   choices=["tree", "gnp", "grid"])
    p.add_argument("--variant", default="connected",
                   choices=["connected", "path", "shortest_path"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-weight", type=int, default=8)
    p.add_argument("--max-value", type=int, default=8)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--decision", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a witness against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose",
                       help="emit a nice edge tree decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--pin", default=None, help="comma-separated vertex ids")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (errors.GraphsackError, OSError, json.JSONDecodeError,
            ValueError) as exc:
        log.error("%s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
