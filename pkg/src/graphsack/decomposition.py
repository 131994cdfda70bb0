"""Rooted nice edge tree decompositions with a pinned vertex set.

The width heuristic is greedy min-fill; DP correctness downstream is
width-agnostic, so no attempt is made at exact treewidth.  Pinning is
implemented by adding the pinned vertices to every bag, which inflates
the width by at most |pinned|.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import errors
from .model import Instance

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET_VERTEX = "forget_vertex"
JOIN = "join"


@dataclass(frozen=True)
class DecompNode:
    kind: str
    bag: frozenset[int]
    children: tuple[int, ...]
    vertex: Optional[int] = None
    edge: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: tuple[DecompNode, ...]
    root: int
    pinned: frozenset[int]
    width: int

    def postorder(self) -> list[int]:
        """Node ids with every child before its parent."""
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            nid, expanded = stack.pop()
            if expanded:
                out.append(nid)
            else:
                stack.append((nid, True))
                for c in self.nodes[nid].children:
                    stack.append((c, False))
        return out

    def to_doc(self) -> dict:
        nodes = []
        for node in self.nodes:
            entry = {"kind": node.kind, "bag": sorted(node.bag),
                     "children": list(node.children)}
            if node.vertex is not None:
                entry["vertex"] = node.vertex
            if node.edge is not None:
                entry["edge"] = list(node.edge)
            nodes.append(entry)
        return {"nodes": nodes, "root": self.root,
                "pinned": sorted(self.pinned), "width": self.width}


def elimination_order_minfill(inst: Instance, seed: int = 0) -> tuple[int, ...]:
    """Greedy min-fill elimination order.

    Ties break on lowest vertex id.  A nonzero seed shuffles the scan
    order among exact ties instead, which is still deterministic for a
    fixed seed.
    """
    adj: list[set[int]] = [set() for _ in range(inst.n)]
    for u, v in inst.edges:
        adj[u].add(v)
        adj[v].add(u)
    rng = random.Random(seed) if seed else None
    remaining = set(range(inst.n))
    order: list[int] = []
    while remaining:
        scan = sorted(remaining)
        if rng is not None:
            rng.shuffle(scan)
        best_v = None
        best_fill = None
        for v in scan:
            nbrs = adj[v]
            fill = 0
            nl = sorted(nbrs)
            for i, a in enumerate(nl):
                fill += sum(1 for b in nl[i + 1:] if b not in adj[a])
            if best_fill is None or fill < best_fill or (
                    fill == best_fill and rng is None and v < best_v):
                best_fill, best_v = fill, v
        v = best_v
        nbrs = sorted(adj[v])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
        for a in nbrs:
            adj[a].discard(v)
        adj[v].clear()
        remaining.remove(v)
        order.append(v)
    return tuple(order)


class _Builder:
    def __init__(self):
        self.kinds: list[str] = []
        self.bags: list[frozenset[int]] = []
        self.children: list[list[int]] = []
        self.vertices: list[Optional[int]] = []
        self.edges: list[Optional[tuple[int, int]]] = []

    def add(self, kind: str, bag: Iterable[int], children: list[int],
            vertex: Optional[int] = None,
            edge: Optional[tuple[int, int]] = None) -> int:
        self.kinds.append(kind)
        self.bags.append(frozenset(bag))
        self.children.append(children)
        self.vertices.append(vertex)
        self.edges.append(edge)
        return len(self.kinds) - 1


def _raw_bag_tree(inst: Instance, order: tuple[int, ...]):
    """Bags from the elimination order, linked into a single rooted tree.

    Returns (bags, children, root) indexed by elimination position.
    """
    n = inst.n
    pos = {v: i for i, v in enumerate(order)}
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in inst.edges:
        adj[u].add(v)
        adj[v].add(u)
    bags: list[set[int]] = [set() for _ in range(n)]
    parent: list[Optional[int]] = [None] * n
    for i, v in enumerate(order):
        higher = sorted(adj[v], key=pos.get)
        bags[i] = {v, *higher}
        if higher:
            parent[i] = pos[higher[0]]
        elif i + 1 < n:
            parent[i] = i + 1  # isolated remainder: chain onto the next bag
        for idx, a in enumerate(higher):
            for b in higher[idx + 1:]:
                adj[a].add(b)
                adj[b].add(a)
        for a in higher:
            adj[a].discard(v)
        adj[v].clear()
    children: list[list[int]] = [[] for _ in range(n)]
    root = n - 1
    for i, p in enumerate(parent):
        if p is not None:
            children[p].append(i)
    return bags, children, root


def build_nice_decomposition(inst: Instance, order: tuple[int, ...],
                             pinned: Iterable[int]) -> NiceDecomposition:
    """Turn an elimination order into a rooted nice edge decomposition
    whose root and leaf bags equal the pinned set."""
    pinned = frozenset(pinned)
    if len(pinned) > 2:
        raise errors.PinnedTooLarge(f"pinned set {sorted(pinned)} too large")
    b = _Builder()

    if inst.n == 0:
        node = DecompNode(LEAF, pinned, ())
        return NiceDecomposition((node,), 0, pinned, len(pinned) - 1)

    raw_bags, raw_children, raw_root = _raw_bag_tree(inst, order)
    for bag in raw_bags:
        bag |= pinned

    def chain_to(top_id: int, have: frozenset[int],
                 want: frozenset[int]) -> int:
        nid = top_id
        bag = set(have)
        for v in sorted(have - want):
            bag.discard(v)
            nid = b.add(FORGET_VERTEX, bag, [nid], vertex=v)
        for v in sorted(want - have):
            bag.add(v)
            nid = b.add(INTRODUCE_VERTEX, bag, [nid], vertex=v)
        return nid

    def build(raw_id: int) -> int:
        bag = frozenset(raw_bags[raw_id])
        kids = raw_children[raw_id]
        if not kids:
            leaf = b.add(LEAF, pinned, [])
            return chain_to(leaf, pinned, bag)
        tops = []
        for kid in kids:
            kid_top = build(kid)
            tops.append(chain_to(kid_top, frozenset(raw_bags[kid]), bag))
        nid = tops[0]
        for other in tops[1:]:
            nid = b.add(JOIN, bag, [nid, other])
        return nid

    top = build(raw_root)
    root = chain_to(top, frozenset(raw_bags[raw_root]), pinned)

    root = _insert_edge_nodes(b, root, inst.edges)

    nodes = tuple(DecompNode(b.kinds[i], b.bags[i], tuple(b.children[i]),
                             b.vertices[i], b.edges[i])
                  for i in range(len(b.kinds)))
    width = max(len(node.bag) for node in nodes) - 1
    return NiceDecomposition(nodes, root, pinned, width)


def _insert_edge_nodes(b: _Builder, root: int,
                       graph_edges: tuple[tuple[int, int], ...]) -> int:
    """Place each graph edge at the deepest node whose bag holds both
    endpoints, then splice an introduce-edge node directly above it."""
    depth = {root: 0}
    parent: dict[int, int] = {}
    stack = [root]
    topo = []
    while stack:
        nid = stack.pop()
        topo.append(nid)
        for c in b.children[nid]:
            depth[c] = depth[nid] + 1
            parent[c] = nid
            stack.append(c)

    placements: dict[int, list[tuple[int, int]]] = {}
    for u, v in graph_edges:
        best = None
        for nid in topo:
            if u in b.bags[nid] and v in b.bags[nid]:
                key = (depth[nid], -nid)
                if best is None or key > best[0]:
                    best = (key, nid)
        if best is None:
            # cannot happen for bags built from an elimination order
            raise errors.EdgeNeverIntroduced(f"no bag contains {{{u},{v}}}")
        placements.setdefault(best[1], []).append((u, v))

    for target, edge_list in placements.items():
        below = target
        for e in sorted(edge_list):
            nid = b.add(INTRODUCE_EDGE, b.bags[target], [below], edge=e)
            below = nid
        if target in parent:
            p = parent[target]
            b.children[p] = [below if c == target else c
                             for c in b.children[p]]
        else:
            # the decomposition collapsed to a single chain whose top
            # holds both endpoints (both pinned): re-root above it
            root = below
    return root


def validate_nice_decomposition(inst: Instance,
                                nd: NiceDecomposition) -> bool:
    """Check every structural invariant against the instance.

    Raises a ValidationError subclass on the first violation.
    """
    nodes = nd.nodes
    if not (0 <= nd.root < len(nodes)):
        raise errors.BadNodeArity("root id out of range")

    parent: dict[int, int] = {}
    seen = set()
    stack = [nd.root]
    while stack:
        nid = stack.pop()
        if nid in seen:
            raise errors.BadNodeArity(f"node {nid} reached twice")
        seen.add(nid)
        for c in nodes[nid].children:
            if not (0 <= c < len(nodes)):
                raise errors.BadNodeArity(f"child id {c} out of range")
            parent[c] = nid
            stack.append(c)

    for nid in seen:
        node = nodes[nid]
        kids = node.children
        if node.kind == LEAF:
            if kids:
                raise errors.BadNodeArity(f"leaf {nid} has children")
            if node.bag != nd.pinned:
                raise errors.BadNodeArity(f"leaf {nid} bag is not the pinned set")
        elif node.kind == JOIN:
            if len(kids) != 2:
                raise errors.BadNodeArity(f"join {nid} needs two children")
            if any(nodes[c].bag != node.bag for c in kids):
                raise errors.BadNodeArity(f"join {nid} children bags differ")
        elif node.kind == INTRODUCE_VERTEX:
            if len(kids) != 1 or node.vertex is None:
                raise errors.BadNodeArity(f"bad introduce node {nid}")
            child = nodes[kids[0]]
            if node.bag != child.bag | {node.vertex} or node.vertex in child.bag:
                raise errors.BadNodeArity(f"introduce {nid} bag mismatch")
        elif node.kind == FORGET_VERTEX:
            if len(kids) != 1 or node.vertex is None:
                raise errors.BadNodeArity(f"bad forget node {nid}")
            child = nodes[kids[0]]
            if node.bag != child.bag - {node.vertex} or node.vertex not in child.bag:
                raise errors.BadNodeArity(f"forget {nid} bag mismatch")
        elif node.kind == INTRODUCE_EDGE:
            if len(kids) != 1 or node.edge is None:
                raise errors.BadNodeArity(f"bad introduce-edge node {nid}")
            child = nodes[kids[0]]
            if node.bag != child.bag:
                raise errors.BadNodeArity(f"introduce-edge {nid} bag mismatch")
            u, v = node.edge
            if u not in node.bag or v not in node.bag:
                raise errors.BadNodeArity(
                    f"introduce-edge {nid} endpoints missing from bag")
        else:
            raise errors.BadNodeArity(f"unknown kind {node.kind!r}")
        if not nd.pinned <= node.bag:
            raise errors.RootNotPinnedBag(
                f"pinned vertices missing from bag of node {nid}")

    if nodes[nd.root].bag != nd.pinned:
        raise errors.RootNotPinnedBag("root bag is not the pinned set")

    counts: dict[tuple[int, int], int] = {e: 0 for e in inst.edges}
    for nid in seen:
        node = nodes[nid]
        if node.kind == INTRODUCE_EDGE:
            key = (min(node.edge), max(node.edge))
            if key not in counts:
                raise errors.BadNodeArity(f"edge {key} is not a graph edge")
            counts[key] += 1
    for e, c in counts.items():
        if c == 0:
            raise errors.EdgeNeverIntroduced(f"edge {e} never introduced")
        if c > 1:
            raise errors.EdgeIntroducedTwice(f"edge {e} introduced {c} times")

    holders: dict[int, list[int]] = {}
    for nid in seen:
        for v in nodes[nid].bag:
            holders.setdefault(v, []).append(nid)
    for v in range(inst.n):
        if v not in holders:
            raise errors.BrokenSubtreeConnectivity(f"vertex {v} in no bag")
        members = set(holders[v])
        start = holders[v][0]
        reach = {start}
        frontier = [start]
        while frontier:
            nid = frontier.pop()
            nbrs = list(nodes[nid].children)
            if nid in parent:
                nbrs.append(parent[nid])
            for nb in nbrs:
                if nb in members and nb not in reach:
                    reach.add(nb)
                    frontier.append(nb)
        if reach != members:
            raise errors.BrokenSubtreeConnectivity(
                f"bags containing vertex {v} are not connected")

    actual_width = max(len(nodes[nid].bag) for nid in seen) - 1
    if nd.width != actual_width:
        raise errors.BadNodeArity(
            f"recorded width {nd.width} != actual {actual_width}")
    return True


def decompose(inst: Instance, pinned: Iterable[int] = (),
              seed: int = 0) -> NiceDecomposition:
    """Convenience wrapper: min-fill order, build, validate."""
    order = elimination_order_minfill(inst, seed=seed)
    nd = build_nice_decomposition(inst, order, pinned)
    validate_nice_decomposition(inst, nd)
    return nd
