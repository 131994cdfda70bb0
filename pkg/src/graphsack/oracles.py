"""Brute-force reference solvers, used as ground truth in tests.

These deliberately share no code with the real solvers beyond the
Pareto-set type.  Hard size guards keep them from exploding in CI.
"""
from __future__ import annotations

from . import errors
from .model import Instance, ParetoSet, Variant, prune_pairs

MAX_CONNECTED_N = 20
MAX_PATH_N = 12


def enumerate_connected_subsets_opt(inst: Instance) -> ParetoSet:
    """Exact frontier over all connected subsets (including the empty
    set) within the budget, by subset enumeration."""
    if inst.n > MAX_CONNECTED_N:
        raise errors.TooLarge(f"n={inst.n} exceeds {MAX_CONNECTED_N}")
    adj_mask = [0] * inst.n
    for u, v in inst.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u

    pairs = [(0, 0)]
    for mask in range(1, 1 << inst.n):
        w = a = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            w += inst.weight[v]
            a += inst.value[v]
            m &= m - 1
        if w > inst.s:
            continue
        # flood fill within the subset
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            grow = adj_mask[v] & mask & ~seen
            seen |= grow
            frontier |= grow
        if seen == mask:
            pairs.append((w, a))
    return ParetoSet(prune_pairs(pairs, inst.s))


def _all_simple_paths(inst: Instance):
    """Yield every simple x-y path as a vertex tuple (in order)."""
    x, y = inst.x, inst.y
    if x == y:
        yield (x,)
        return
    adj = inst.adjacency()
    path = [x]
    on_path = {x}

    def extend(u):
        for v in adj[u]:
            if v in on_path:
                continue
            if v == y:
                yield tuple(path) + (y,)
                continue
            path.append(v)
            on_path.add(v)
            yield from extend(v)
            path.pop()
            on_path.remove(v)

    yield from extend(x)


def enumerate_paths_opt(inst: Instance) -> ParetoSet:
    """Exact frontier over all simple x-y paths within the budget."""
    if inst.n > MAX_PATH_N:
        raise errors.TooLarge(f"n={inst.n} exceeds {MAX_PATH_N}")
    pairs = []
    for path in _all_simple_paths(inst):
        w = inst.total_weight(path)
        if w <= inst.s:
            pairs.append((w, inst.total_value(path)))
    return ParetoSet(prune_pairs(pairs, inst.s))


def enumerate_shortest_paths_opt(inst: Instance) -> ParetoSet:
    """Exact frontier over minimum-cost simple x-y paths within the
    budget.  Raises Unreachable when no x-y path exists at all."""
    if inst.n > MAX_PATH_N:
        raise errors.TooLarge(f"n={inst.n} exceeds {MAX_PATH_N}")
    cmap = inst.cost_map()
    best_cost = None
    costed = []
    for path in _all_simple_paths(inst):
        cost = sum(cmap[(min(u, v), max(u, v))]
                   for u, v in zip(path, path[1:]))
        costed.append((cost, path))
        if best_cost is None or cost < best_cost:
            best_cost = cost
    if best_cost is None:
        raise errors.Unreachable(f"no path from {inst.x} to {inst.y}")
    pairs = []
    for cost, path in costed:
        if cost != best_cost:
            continue
        w = inst.total_weight(path)
        if w <= inst.s:
            pairs.append((w, inst.total_value(path)))
    return ParetoSet(prune_pairs(pairs, inst.s))


def oracle_for(inst: Instance) -> ParetoSet:
    if inst.variant is Variant.CONNECTED:
        return enumerate_connected_subsets_opt(inst)
    if inst.variant is Variant.PATH:
        return enumerate_paths_opt(inst)
    return enumerate_shortest_paths_opt(inst)
