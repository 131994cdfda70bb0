"""Hardness-reduction gadget generators.

Each generator turns a source instance (Vertex Cover, Knapsack,
Partial Vertex Cover, Hamiltonian Path) into a graph-knapsack instance
whose yes/no answer matches the source's.  They serve as structured
test generators: the provenance record names, for every gadget vertex,
the source item/vertex/edge it came from.

Vertex numbering is fixed so generated files are byte-reproducible:

- vertex_cover_to_connected: cover vertex u_i = i (0 <= i < n), spine
  vertex g_i = n + i, edge vertex h_e = 2n + j where j indexes the
  sorted source edge list.
- partial_vc_to_connected: u_i = i, h_e = n + j, hub g = n + m.
- knapsack_to_star_connected: center 0, item i at vertex i + 1.
- knapsack_to_path_gadget: u_i = 3i (0 <= i <= n), item rung
  v_i = 3i - 2, bypass rung w_i = 3i - 1 (1 <= i <= n).
- hamiltonian_to_path keeps the source graph's numbering.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, Variant, validate_instance


@dataclass(frozen=True)
class SourceGraph:
    """A plain graph used as reduction input."""
    n: int
    edges: tuple[tuple[int, int], ...]

    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))


@dataclass(frozen=True)
class KnapsackItems:
    """A plain 0/1-knapsack instance used as reduction input."""
    sizes: tuple[int, ...]
    profits: tuple[int, ...]
    capacity: int
    target: int


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    provenance: dict


def reduce_vertex_cover_to_connected(graph: SourceGraph,
                                     k: int) -> ReductionOutput:
    """Vertex Cover (G, k) -> Connected Knapsack with s=k, d=m.

    Cover vertices cost 1 and are worth 0; the free g-spine keeps
    them connected; each edge vertex h_e (worth 1, free) hangs off
    both endpoints' cover vertices.  Equivalence needs m != 1: with a
    single edge, {h_e} alone is connected and already meets d.
    """
    n, edges = graph.n, graph.sorted_edges()
    m = len(edges)
    gadget_edges = []
    vertex_of = {}
    for i in range(n):
        vertex_of[f"u{i}"] = i
        vertex_of[f"g{i}"] = n + i
        gadget_edges.append((i, n + i))
    for i in range(n - 1):
        gadget_edges.append((n + i, n + i + 1))
    for j, (a, bb) in enumerate(edges):
        h = 2 * n + j
        vertex_of[f"h{j}"] = h
        gadget_edges.append((a, h))
        gadget_edges.append((bb, h))
    weight = [1] * n + [0] * n + [0] * m
    value = [0] * n + [0] * n + [1] * m
    inst = validate_instance(Instance(
        variant=Variant.CONNECTED, n=2 * n + m, edges=tuple(gadget_edges),
        weight=tuple(weight), value=tuple(value), s=k, d=m))
    provenance = {
        "reduction": "vertex_cover_to_connected",
        "source": {"n": n, "edges": [list(e) for e in edges], "k": k},
        "vertex_of": vertex_of,
        "edge_vertex_for": {f"h{j}": list(e) for j, e in enumerate(edges)},
    }
    return ReductionOutput(inst, provenance)


def reduce_knapsack_to_star_connected(items: KnapsackItems) -> ReductionOutput:
    """Knapsack -> Connected Knapsack on a star; center is free."""
    if not items.sizes:
        raise ValueError("items must be nonempty")
    n = len(items.sizes)
    inst = validate_instance(Instance(
        variant=Variant.CONNECTED, n=n + 1,
        edges=tuple((0, i) for i in range(1, n + 1)),
        weight=(0,) + tuple(items.sizes),
        value=(0,) + tuple(items.profits),
        s=items.capacity, d=items.target))
    provenance = {
        "reduction": "knapsack_to_star_connected",
        "source": {"sizes": list(items.sizes), "profits": list(items.profits),
                   "capacity": items.capacity, "target": items.target},
        "vertex_of": {"center": 0,
                      **{f"item{i}": i + 1 for i in range(n)}},
    }
    return ReductionOutput(inst, provenance)


def reduce_partial_vc_to_connected(graph: SourceGraph, k: int,
                                   ell: int) -> ReductionOutput:
    """Partial Vertex Cover (G, k, l) -> Connected Knapsack, s=k, d=l.

    Like the Vertex Cover gadget but with a single free hub g instead
    of the spine; only covered edges' h_e need joining.  Equivalence
    needs l != 1 for the same single-h_e corner as above.
    """
    n, edges = graph.n, graph.sorted_edges()
    m = len(edges)
    gadget_edges = []
    vertex_of = {f"u{i}": i for i in range(n)}
    g = n + m
    vertex_of["g"] = g
    for j, (a, bb) in enumerate(edges):
        h = n + j
        vertex_of[f"h{j}"] = h
        gadget_edges.append((a, h))
        gadget_edges.append((bb, h))
    for i in range(n):
        gadget_edges.append((i, g))
    weight = [1] * n + [0] * m + [0]
    value = [0] * n + [1] * m + [0]
    inst = validate_instance(Instance(
        variant=Variant.CONNECTED, n=n + m + 1, edges=tuple(gadget_edges),
        weight=tuple(weight), value=tuple(value), s=k, d=ell))
    provenance = {
        "reduction": "partial_vc_to_connected",
        "source": {"n": n, "edges": [list(e) for e in edges],
                   "k": k, "ell": ell},
        "vertex_of": vertex_of,
        "edge_vertex_for": {f"h{j}": list(e) for j, e in enumerate(edges)},
    }
    return ReductionOutput(inst, provenance)


def reduce_hamiltonian_to_path(graph: SourceGraph, x: int,
                               y: int) -> ReductionOutput:
    """Hamiltonian Path (G, x, y) -> Path Knapsack with s=0, d=n."""
    if x == y:
        raise ValueError("terminals must differ")
    inst = validate_instance(Instance(
        variant=Variant.PATH, n=graph.n, edges=graph.sorted_edges(),
        weight=(0,) * graph.n, value=(1,) * graph.n,
        s=0, d=graph.n, x=x, y=y))
    provenance = {
        "reduction": "hamiltonian_to_path",
        "source": {"n": graph.n,
                   "edges": [list(e) for e in graph.sorted_edges()],
                   "x": x, "y": y},
        "vertex_of": {f"v{i}": i for i in range(graph.n)},
    }
    return ReductionOutput(inst, provenance)


def reduce_knapsack_to_path_gadget(items: KnapsackItems,
                                   variant: Variant = Variant.PATH
                                   ) -> ReductionOutput:
    """Knapsack -> Path Knapsack on the width-2 ladder gadget.

    Every x-y path picks, per item i, either the item rung v_i
    (weight theta_i, value p_i) or the free bypass rung w_i, so paths
    are exactly item subsets.  With variant=shortest_path all edge
    costs are 1; every x-y path has 2n edges, so all are shortest and
    the same equivalence holds.

    The provenance carries an explicit width-2 path decomposition
    (bag list) certifying the gadget's pathwidth bound.
    """
    if not items.sizes:
        raise ValueError("items must be nonempty")
    if variant not in (Variant.PATH, Variant.SHORTEST_PATH):
        raise ValueError("gadget variant must be path or shortest_path")
    n = len(items.sizes)

    def u(i):
        return 3 * i

    def v(i):
        return 3 * i - 2

    def w(i):
        return 3 * i - 1

    edges = []
    for i in range(n):
        edges.append((u(i), v(i + 1)))
        edges.append((u(i), w(i + 1)))
    for i in range(1, n + 1):
        edges.append((u(i), v(i)))
        edges.append((u(i), w(i)))
    weight = [0] * (3 * n + 1)
    value = [0] * (3 * n + 1)
    for i in range(1, n + 1):
        weight[v(i)] = items.sizes[i - 1]
        value[v(i)] = items.profits[i - 1]
    inst = validate_instance(Instance(
        variant=variant, n=3 * n + 1, edges=tuple(edges),
        weight=tuple(weight), value=tuple(value),
        s=items.capacity, d=items.target, x=u(0), y=u(n),
        edge_cost=tuple(1 for _ in edges)
        if variant is Variant.SHORTEST_PATH else None))
    bags = []
    for i in range(1, n + 1):
        bags.append([u(i - 1), v(i), w(i)])
        bags.append([v(i), w(i), u(i)])
    vertex_of = {"u0": 0}
    for i in range(1, n + 1):
        vertex_of[f"u{i}"] = u(i)
        vertex_of[f"v{i}"] = v(i)
        vertex_of[f"w{i}"] = w(i)
    provenance = {
        "reduction": "knapsack_to_path_gadget",
        "source": {"sizes": list(items.sizes), "profits": list(items.profits),
                   "capacity": items.capacity, "target": items.target},
        "vertex_of": vertex_of,
        "item_vertex_for": {f"v{i}": i - 1 for i in range(1, n + 1)},
        "path_decomposition": bags,
    }
    return ReductionOutput(inst, provenance)
