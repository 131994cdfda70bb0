"""Exact Connected Knapsack solver: partition-state DP over a nice
edge tree decomposition, rooted at each candidate anchor vertex.

A DP state at node t is a partition of the bag: the distinguished
"outside" set (bag vertices not in the partial solution) plus one
block per connected component trace of the partial solution.  Cell
payloads are undominated (weight, value) frontiers; each pair keeps
one back-reference for witness reconstruction.
"""
from __future__ import annotations

import time
from typing import Optional

from .decomposition import (FORGET_VERTEX, INTRODUCE_EDGE, INTRODUCE_VERTEX,
                            JOIN, LEAF, NiceDecomposition,
                            build_nice_decomposition,
                            elimination_order_minfill)
from .model import (Instance, ParetoSet, SolveReport, Variant, build_report,
                    prune_pairs)

State = tuple[frozenset, tuple]


def _canon_blocks(blocks) -> tuple:
    return tuple(sorted((b for b in blocks if b), key=min))


def _prune_cell(cell: dict, cap_s: int) -> dict:
    keep = prune_pairs(cell.keys(), cap_s)
    return {p: cell[p] for p in keep}


def _merge_blocks(blocks: tuple, i: int, j: int) -> tuple:
    merged = blocks[i] | blocks[j]
    rest = [b for k, b in enumerate(blocks) if k not in (i, j)]
    return _canon_blocks(rest + [merged])


def _union_partitions(insol: frozenset, parts1: tuple, parts2: tuple) -> tuple:
    """Transitive closure of two partitions of the same vertex set."""
    parent = {v: v for v in insol}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for blocks in (parts1, parts2):
        for block in blocks:
            it = iter(block)
            first = find(next(it))
            for v in it:
                parent[find(v)] = first
    classes: dict[int, set] = {}
    for v in insol:
        classes.setdefault(find(v), set()).add(v)
    return _canon_blocks(frozenset(c) for c in classes.values())


def _rooted_tables(inst: Instance, anchor: int, nd: NiceDecomposition,
                   stats: dict):
    """Fill the DP tables bottom-up; returns {node: {state: {pair: ref}}}."""
    s = inst.s
    weight, value = inst.weight, inst.value
    tables: dict[int, dict[State, dict]] = {}

    for nid in nd.postorder():
        node = nd.nodes[nid]
        stats["nodes_expanded"] += 1
        out: dict[State, dict] = {}

        if node.kind == LEAF:
            out[(frozenset({anchor}), ())] = {(0, 0): ("leaf", False)}
            if weight[anchor] <= s:
                out[(frozenset(), (frozenset({anchor}),))] = {
                    (weight[anchor], value[anchor]): ("leaf", True)}

        elif node.kind == INTRODUCE_VERTEX:
            child = node.children[0]
            u = node.vertex
            wu, au = weight[u], value[u]
            for state, cell in tables[child].items():
                outside, blocks = state
                st_out = (outside | {u}, blocks)
                out[st_out] = {p: ("copy", child, state, p) for p in cell}
                st_in = (outside, _canon_blocks(blocks + (frozenset({u}),)))
                shifted = {}
                for (w, a) in cell:
                    if w + wu <= s:
                        shifted[(w + wu, a + au)] = ("add", child, state,
                                                     (w, a), u)
                if shifted:
                    out[st_in] = shifted

        elif node.kind == FORGET_VERTEX:
            child = node.children[0]
            u = node.vertex
            for state, cell in tables[child].items():
                outside, blocks = state
                if u in outside:
                    new_state = (outside - {u}, blocks)
                else:
                    idx = next(i for i, b in enumerate(blocks) if u in b)
                    if len(blocks[idx]) == 1:
                        # the only trace of this component vanished; it can
                        # never reach the anchor's component any more
                        continue
                    rest = blocks[:idx] + (blocks[idx] - {u},) + blocks[idx + 1:]
                    new_state = (outside, _canon_blocks(rest))
                dst = out.setdefault(new_state, {})
                for p in cell:
                    dst.setdefault(p, ("copy", child, state, p))

        elif node.kind == INTRODUCE_EDGE:
            child = node.children[0]
            u, v = node.edge
            for state, cell in tables[child].items():
                outside, blocks = state
                if u in outside or v in outside:
                    new_state = state
                else:
                    iu = next(i for i, b in enumerate(blocks) if u in b)
                    iv = next(i for i, b in enumerate(blocks) if v in b)
                    if iu == iv:
                        new_state = state
                    else:
                        new_state = (outside, _merge_blocks(blocks, iu, iv))
                dst = out.setdefault(new_state, {})
                for p in cell:
                    dst.setdefault(p, ("copy", child, state, p))

        elif node.kind == JOIN:
            c1, c2 = node.children
            by_outside: dict[frozenset, list] = {}
            for state, cell in tables[c2].items():
                by_outside.setdefault(state[0], []).append((state, cell))
            insol_all = node.bag
            for state1, cell1 in tables[c1].items():
                outside = state1[0]
                partners = by_outside.get(outside)
                if not partners:
                    continue
                insol = insol_all - outside
                w_off = sum(weight[v] for v in insol)
                a_off = sum(value[v] for v in insol)
                for state2, cell2 in partners:
                    merged = (outside,
                              _union_partitions(insol, state1[1], state2[1]))
                    dst = out.setdefault(merged, {})
                    for p1 in cell1:
                        for p2 in cell2:
                            w = p1[0] + p2[0] - w_off
                            if w > s:
                                continue
                            pair = (w, p1[1] + p2[1] - a_off)
                            dst.setdefault(pair, ("join", c1, state1, p1,
                                                  c2, state2, p2))
        else:
            raise AssertionError(node.kind)

        out = {st: _prune_cell(cell, s) for st, cell in out.items() if cell}
        out = {st: cell for st, cell in out.items() if cell}
        stats["states_touched"] += sum(len(c) for c in out.values())
        tables[nid] = out
    return tables


def _reconstruct(tables, nid, state, pair, leaf_vertices) -> set[int]:
    chosen: set[int] = set()
    stack = [(nid, state, pair)]
    while stack:
        nid, state, pair = stack.pop()
        ref = tables[nid][state][pair]
        kind = ref[0]
        if kind == "leaf":
            if ref[1]:
                chosen.update(leaf_vertices)
        elif kind == "copy":
            stack.append((ref[1], ref[2], ref[3]))
        elif kind == "add":
            chosen.add(ref[4])
            stack.append((ref[1], ref[2], ref[3]))
        else:  # join
            stack.append((ref[1], ref[2], ref[3]))
            stack.append((ref[4], ref[5], ref[6]))
    return chosen


def solve_connected_rooted(inst: Instance, anchor: int,
                           nd: Optional[NiceDecomposition] = None,
                           stats: Optional[dict] = None) -> ParetoSet:
    """Frontier over connected subsets containing ``anchor``."""
    frontier, _ = _solve_rooted_with_witnesses(inst, anchor, nd, stats)
    return frontier


def _solve_rooted_with_witnesses(inst, anchor, nd=None, stats=None):
    if nd is None:
        order = elimination_order_minfill(inst)
        nd = build_nice_decomposition(inst, order, {anchor})
    if stats is None:
        stats = {"nodes_expanded": 0, "states_touched": 0}
    tables = _rooted_tables(inst, anchor, nd, stats)
    root_state = (frozenset(), (frozenset({anchor}),))
    cell = tables[nd.root].get(root_state, {})
    frontier = ParetoSet(prune_pairs(cell.keys(), inst.s))
    witnesses = {p: frozenset(_reconstruct(tables, nd.root, root_state, p,
                                           {anchor}))
                 for p in frontier}
    return frontier, witnesses


def solve_connected(inst: Instance, early_stop: bool = False) -> SolveReport:
    """Full Connected Knapsack solve: best over all anchors plus the
    empty solution.

    With ``early_stop`` and a decision target, anchors are abandoned as
    soon as some pair reaches the target (the frontier may then be
    partial; the decision answer is unaffected).
    """
    if inst.variant is not Variant.CONNECTED:
        raise ValueError("solve_connected requires the connected variant")
    t0 = time.perf_counter()
    stats = {"nodes_expanded": 0, "states_touched": 0}
    pool: dict[tuple[int, int], frozenset[int]] = {(0, 0): frozenset()}
    order = elimination_order_minfill(inst)
    for anchor in range(inst.n):
        nd = build_nice_decomposition(inst, order, {anchor})
        frontier, witnesses = _solve_rooted_with_witnesses(
            inst, anchor, nd, stats)
        for pair, wit in witnesses.items():
            if pair not in pool:
                pool[pair] = wit
        if (early_stop and inst.d is not None
                and any(a >= inst.d for _, a in pool)):
            break
    frontier = ParetoSet(prune_pairs(pool.keys(), inst.s))
    stats["wall_time"] = time.perf_counter() - t0
    return build_report(inst, frontier, pool, stats)
