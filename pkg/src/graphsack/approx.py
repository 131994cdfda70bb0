"""Value-scaling FPTAS wrapper around any of the exact solvers.

Values are rescaled to alpha'(u) = floor(n * alpha(u) / (eps * alpha_max)),
the exact solver runs on the scaled instance, and the returned witness
is re-valued in the original instance.  The classic rounding argument
gives alpha(witness) >= (1 - eps) * OPT.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import errors
from .model import (Instance, ParetoSet, SolveReport, Variant,
                    validate_instance)


@dataclass(frozen=True)
class ScaledInstance:
    base: Instance
    epsilon: Fraction
    scaled: Instance
    alpha_max: int
    zero_values: bool


def parse_epsilon(value) -> Fraction:
    """Accept a Fraction, an int, or a 'NUM/DEN' / decimal string."""
    try:
        eps = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise errors.BadEpsilon(str(exc)) from exc
    if not 0 < eps <= 1:
        raise errors.BadEpsilon(f"epsilon {eps} outside (0, 1]")
    return eps


def scale_values(inst: Instance, epsilon) -> ScaledInstance:
    """Apply the floor(n*alpha/(eps*alpha_max)) value scaling."""
    eps = parse_epsilon(epsilon)
    alpha_max = max(inst.value, default=0)
    if alpha_max == 0:
        return ScaledInstance(inst, eps, inst, 0, True)
    factor = Fraction(inst.n) / (eps * alpha_max)
    scaled_values = tuple(int(a * factor) for a in inst.value)
    scaled = Instance(variant=inst.variant, n=inst.n, edges=inst.edges,
                      weight=inst.weight, value=scaled_values, s=inst.s,
                      d=None, x=inst.x, y=inst.y, edge_cost=inst.edge_cost)
    return ScaledInstance(inst, eps, scaled, alpha_max, False)


def prune_overweight(inst: Instance) -> tuple[Instance, Optional[tuple[int, ...]]]:
    """Drop every vertex with w(u) > s; returns (instance, old-id map).

    Safe for connected and path instances: such a vertex cannot appear
    in any feasible solution.  NOT safe for shortest_path, where
    removing a vertex can raise dist(x, y) and so change which paths
    qualify at all.  Returns ``(inst, None)`` when nothing is dropped.
    For path variants an overweight terminal means no feasible solution
    exists; the caller must check terminals first.
    """
    keep = [v for v in range(inst.n) if inst.weight[v] <= inst.s]
    if len(keep) == inst.n:
        return inst, None
    remap = {v: i for i, v in enumerate(keep)}
    kept = set(keep)
    edges = []
    costs = []
    cmap = inst.cost_map()
    for (u, v) in inst.edges:
        if u in kept and v in kept:
            edges.append((remap[u], remap[v]))
            costs.append(cmap[(u, v)])
    pruned = Instance(
        variant=inst.variant, n=len(keep), edges=tuple(edges),
        weight=tuple(inst.weight[v] for v in keep),
        value=tuple(inst.value[v] for v in keep),
        s=inst.s, d=inst.d,
        x=remap.get(inst.x) if inst.x is not None else None,
        y=remap.get(inst.y) if inst.y is not None else None,
        edge_cost=tuple(costs) if inst.variant is Variant.SHORTEST_PATH
        else None)
    return validate_instance(pruned), tuple(keep)


def _default_solver(variant: Variant) -> Callable[[Instance], SolveReport]:
    from .connected import solve_connected
    from .paths import solve_path_treewidth
    from .shortest import solve_shortest_path
    if variant is Variant.CONNECTED:
        return solve_connected
    if variant is Variant.PATH:
        return solve_path_treewidth
    return solve_shortest_path


def fptas_optimize(inst: Instance, epsilon,
                   exact_solver: Optional[Callable] = None) -> SolveReport:
    """(1 - eps)-approximate optimizer; witness feasible in ``inst``.

    The report's frontier and values are in ORIGINAL units; the scaled
    run's outcome is recorded under stats["scaled_value"].
    """
    eps = parse_epsilon(epsilon)
    t0 = time.perf_counter()

    if inst.variant in (Variant.PATH, Variant.SHORTEST_PATH):
        if inst.weight[inst.x] > inst.s or inst.weight[inst.y] > inst.s:
            return SolveReport(False, None, None, ParetoSet(),
                               {"wall_time": time.perf_counter() - t0})
    if inst.variant is Variant.SHORTEST_PATH:
        work, keep_map = inst, None  # pruning would change dist(x, y)
    else:
        work, keep_map = prune_overweight(inst)

    scaling = scale_values(work, eps)
    solver = exact_solver or _default_solver(inst.variant)
    report = solver(scaling.scaled)

    stats = dict(report.stats)
    stats["epsilon"] = str(eps)
    stats["alpha_max"] = scaling.alpha_max
    stats["scaled_value"] = report.best_value
    if report.witness is None:
        stats["wall_time"] = time.perf_counter() - t0
        return SolveReport(False, None, None, report.frontier, stats)

    witness = report.witness
    if keep_map is not None:
        witness = frozenset(keep_map[v] for v in witness)
    w = inst.total_weight(witness)
    a = inst.total_value(witness)
    feasible = w <= inst.s and (inst.d is None or a >= inst.d)
    stats["wall_time"] = time.perf_counter() - t0
    return SolveReport(feasible, a, witness if feasible else None,
                       ParetoSet(((w, a),)), stats)
