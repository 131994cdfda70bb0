"""Core model: validation, Pareto operations, verification, JSON."""
import json

import pytest
from hypothesis import given, strategies as st

from graphsack import (Instance, ParetoSet, Variant, instance_from_json,
                       instance_to_json, pareto_insert, pareto_join,
                       validate_instance, verify_solution)
from graphsack import errors
from graphsack.model import prune_pairs


def make(variant=Variant.CONNECTED, n=3, edges=((0, 1), (1, 2)),
         weight=None, value=None, s=10, **kw):
    return validate_instance(Instance(
        variant=variant, n=n, edges=tuple(edges),
        weight=tuple(weight if weight is not None else [1] * n),
        value=tuple(value if value is not None else [1] * n),
        s=s, **kw))


class TestValidateInstance:
    def test_degenerate_single_vertex(self):
        inst = make(n=1, edges=(), s=0, d=0)
        assert inst.n == 1 and inst.edges == ()

    def test_self_loop(self):
        with pytest.raises(errors.SelfLoop):
            make(edges=((3, 3),), n=4)

    def test_duplicate_edge(self):
        with pytest.raises(errors.DuplicateEdge):
            make(edges=((0, 1), (1, 0)))

    def test_id_out_of_range(self):
        with pytest.raises(errors.IdOutOfRange):
            make(edges=((0, 5),))

    def test_zero_edge_cost(self):
        with pytest.raises(errors.ZeroEdgeCost):
            make(variant=Variant.SHORTEST_PATH, x=0, y=2,
                 edge_cost=(0, 1))

    def test_missing_terminal(self):
        with pytest.raises(errors.MissingTerminal):
            make(variant=Variant.PATH)

    def test_edges_normalized(self):
        inst = make(edges=((2, 1), (1, 0)))
        assert inst.edges == ((0, 1), (1, 2))

    def test_costs_follow_normalization(self):
        inst = make(variant=Variant.SHORTEST_PATH, x=0, y=2,
                    edges=((2, 1), (0, 1)), edge_cost=(5, 3))
        assert inst.edges == ((0, 1), (1, 2))
        assert inst.edge_cost == (3, 5)


class TestParetoOps:
    def test_insert_no_dominance(self):
        ps = ParetoSet(((1, 5), (3, 8)))
        assert pareto_insert(ps, (2, 6), 10).pairs == ((1, 5), (2, 6), (3, 8))

    def test_insert_dominated(self):
        ps = ParetoSet(((1, 5),))
        assert pareto_insert(ps, (2, 4), 10).pairs == ((1, 5),)

    def test_insert_dominates_all(self):
        ps = ParetoSet(((1, 5), (3, 8)))
        assert pareto_insert(ps, (0, 9), 10).pairs == ((0, 9),)

    def test_insert_over_cap_discarded(self):
        ps = ParetoSet(((1, 5),))
        assert pareto_insert(ps, (11, 99), 10).pairs == ((1, 5),)

    def test_join_shared_bag(self):
        a = ParetoSet(((2, 3),))
        assert pareto_join(a, a, 2, 3, 10).pairs == ((2, 3),)

    def test_join_neutral(self):
        a, b = ParetoSet(((0, 0),)), ParetoSet(((4, 7),))
        assert pareto_join(a, b, 0, 0, 10).pairs == ((4, 7),)

    def test_join_cap(self):
        a = ParetoSet(((1, 1), (2, 5)))
        b = ParetoSet(((1, 2),))
        assert pareto_join(a, b, 0, 0, 2).pairs == ((2, 3),)

    def test_join_negative_offset_bug_detected(self):
        with pytest.raises(errors.NegativeCombined):
            pareto_join(ParetoSet(((0, 0),)), ParetoSet(((0, 0),)), 1, 0, 10)

    def test_non_canonical_rejected(self):
        with pytest.raises(ValueError):
            ParetoSet(((1, 5), (2, 4)))

    @given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30))),
           st.integers(0, 30))
    def test_prune_is_canonical_and_undominated(self, pairs, cap):
        out = prune_pairs(pairs, cap)
        ps = ParetoSet(out)  # canonical-form check built into the type
        for w, a in ps:
            assert w <= cap
            assert not any(w2 <= w and a2 >= a for w2, a2 in pairs
                           if (w2, a2) != (w, a) and w2 <= cap
                           and (w2 < w or a2 > a))

    @given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)),
                    max_size=12),
           st.randoms(use_true_random=False))
    def test_insert_order_insensitive(self, pairs, rng):
        cap = 20
        base = ParetoSet()
        for p in pairs:
            base = pareto_insert(base, p, cap)
        shuffled = list(pairs)
        rng.shuffle(shuffled)
        other = ParetoSet()
        for p in shuffled:
            other = pareto_insert(other, p, cap)
        assert base.pairs == other.pairs

    @given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)),
                    max_size=10))
    def test_insert_idempotent(self, pairs):
        ps = ParetoSet(prune_pairs(pairs, 20))
        for p in ps.pairs:
            assert pareto_insert(ps, p, 20).pairs == ps.pairs


class TestVerifySolution:
    def test_connected_disconnected_pair(self):
        inst = make()  # path a-b-c
        res = verify_solution(inst, {0, 2})
        assert not res.ok and res.reason == "disconnected"

    def test_connected_empty_ok(self):
        assert verify_solution(make(), set()).ok

    def test_path_unique_path_ok(self):
        inst = make(variant=Variant.PATH, x=0, y=2, d=3)
        res = verify_solution(inst, {0, 1, 2})
        assert res.ok and res.w == 3 and res.alpha == 3

    def test_path_not_a_path(self):
        inst = make(variant=Variant.PATH, x=0, y=2)
        assert verify_solution(inst, {0, 2}).reason == "not_a_path"

    def test_shortest_diamond(self):
        inst = make(variant=Variant.SHORTEST_PATH, n=4,
                    edges=((0, 1), (1, 3), (0, 2), (2, 3)),
                    x=0, y=3, s=10)
        assert verify_solution(inst, {0, 1, 3}).ok
        assert verify_solution(inst, {0, 2, 3}).ok

    def test_shortest_longer_path_rejected(self):
        inst = make(variant=Variant.SHORTEST_PATH, n=4,
                    edges=((0, 1), (1, 3), (0, 2), (2, 3)),
                    edge_cost=(2, 2, 1, 1), x=0, y=3, s=10)
        assert verify_solution(inst, {0, 2, 3}).ok
        assert verify_solution(inst, {0, 1, 3}).reason == "not_shortest"

    def test_overweight_and_below_target(self):
        inst = make(s=1)
        assert verify_solution(inst, {0, 1, 2}).reason == "overweight"
        inst = make(d=5)
        assert verify_solution(inst, {0}).reason == "below_target"


class TestJsonRoundTrip:
    def test_round_trip(self):
        inst = make(variant=Variant.SHORTEST_PATH, x=0, y=2, d=1,
                    edge_cost=(2, 3))
        again = instance_from_json(instance_to_json(inst))
        assert again == inst

    def test_unknown_field_rejected(self):
        doc = json.loads(instance_to_json(make()))
        doc["extra"] = 1
        with pytest.raises(errors.BadInstanceJson):
            instance_from_json(json.dumps(doc))

    def test_bad_version(self):
        doc = json.loads(instance_to_json(make()))
        doc["version"] = 2
        with pytest.raises(errors.BadInstanceJson):
            instance_from_json(json.dumps(doc))

    def test_output_is_stable_bytes(self):
        inst = make()
        assert instance_to_json(inst) == instance_to_json(inst)
