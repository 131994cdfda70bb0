"""CLI: exit-code contract, determinism, engine dispatch."""
import json

import pytest

from graphsack.cli import main
from graphsack.model import instance_to_json
from graphsack.generators import random_instance
from graphsack import Variant


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def write_instance(tmp_path, inst, name="inst.json"):
    path = tmp_path / name
    path.write_text(instance_to_json(inst))
    return str(path)


@pytest.fixture
def diamond_sp(tmp_path):
    from graphsack.model import Instance, validate_instance
    inst = validate_instance(Instance(
        variant=Variant.SHORTEST_PATH, n=4,
        edges=((0, 1), (1, 3), (0, 2), (2, 3)),
        weight=(0, 2, 1, 0), value=(0, 5, 1, 0), s=2, x=0, y=3))
    return write_instance(tmp_path, inst)


class TestSolve:
    def test_labels_optimize(self, capsys, diamond_sp):
        code, out = run(capsys, "solve", "--input", diamond_sp,
                        "--engine", "labels", "--mode", "optimize")
        doc = json.loads(out)
        assert code == 0 and doc["best_value"] == 5
        assert doc["frontier"] == [[1, 1], [2, 5]]

    def test_infeasible_decision_exit_one(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 5, 1)
        from dataclasses import replace
        inst = replace(inst, d=sum(inst.value) + 1)
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "solve", "--input", path,
                        "--mode", "decision")
        assert code == 1 and json.loads(out)["feasible"] is False

    def test_engine_variant_mismatch_exit_two(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 4, 2)
        path = write_instance(tmp_path, inst)
        code, _ = run(capsys, "solve", "--input", path,
                      "--engine", "labels")
        assert code == 2

    def test_decision_without_target_exit_two(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 4, 3)
        path = write_instance(tmp_path, inst)
        code, _ = run(capsys, "solve", "--input", path,
                      "--mode", "decision")
        assert code == 2

    def test_malformed_input_exit_two(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _ = run(capsys, "solve", "--input", str(bad))
        assert code == 2

    def test_auto_uses_tree_solver_on_trees(self, capsys, tmp_path):
        inst = random_instance(Variant.PATH, "tree", 6, 4)
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "solve", "--input", path)
        assert code in (0, 1)
        assert "trials_run" not in json.loads(out)["stats"]

    def test_epsilon_flag(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "gnp", 6, 5, p=0.5)
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "solve", "--input", path,
                        "--epsilon", "1/4")
        assert code == 0
        assert json.loads(out)["stats"]["epsilon"] == "1/4"

    def test_solve_deterministic(self, capsys, tmp_path):
        inst = random_instance(Variant.PATH, "gnp", 7, 6, p=0.5)
        path = write_instance(tmp_path, inst)
        _, first = run(capsys, "solve", "--input", path,
                       "--engine", "color", "--seed", "9")
        _, second = run(capsys, "solve", "--input", path,
                        "--engine", "color", "--seed", "9")
        assert first == second


class TestGenerate:
    def test_random_deterministic_bytes(self, capsys):
        _, first = run(capsys, "generate", "--random", "tree", "--n", "8",
                       "--seed", "7")
        _, second = run(capsys, "generate", "--random", "tree", "--n", "8",
                        "--seed", "7")
        assert first == second

    def test_bad_n_exit_two(self, capsys):
        code, _ = run(capsys, "generate", "--random", "gnp", "--n", "-1")
        assert code == 2

    def test_ladder_reduction_with_sidecar(self, capsys, tmp_path):
        items = tmp_path / "items.json"
        items.write_text(json.dumps({"sizes": [2, 3], "profits": [3, 4],
                                     "capacity": 5, "target": 7}))
        out_file = tmp_path / "gadget.json"
        code, _ = run(capsys, "generate", "--reduction", "ladder",
                      "--items", str(items), "--output", str(out_file))
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["n"] == 7 and doc["x"] == 0 and doc["y"] == 6
        side = json.loads((tmp_path / "gadget.json.provenance.json")
                          .read_text())
        assert side["reduction"] == "knapsack_to_path_gadget"

    def test_vc_reduction(self, capsys, tmp_path):
        src = tmp_path / "g.json"
        src.write_text(json.dumps(
            {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
        code, out = run(capsys, "generate", "--reduction", "vc",
                        "--source-graph", str(src), "--k", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 9 and doc["s"] == 2 and doc["d"] == 3


class TestVerify:
    def test_valid_witness(self, capsys, tmp_path, diamond_sp):
        wit = tmp_path / "w.json"
        wit.write_text("[0, 2, 3]")
        code, out = run(capsys, "verify", "--input", diamond_sp,
                        "--witness", str(wit))
        assert code == 0 and json.loads(out)["reason"] == "ok"

    def test_invalid_witness_exit_one(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 5, 8)
        path = write_instance(tmp_path, inst)
        wit = tmp_path / "w.json"
        wit.write_text("[0, 4]")
        code, out = run(capsys, "verify", "--input", path,
                        "--witness", str(wit))
        if json.loads(out)["ok"]:
            pytest.skip("random tree happened to connect 0 and 4")
        assert code == 1

    def test_unknown_vertex_exit_two(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 3, 9)
        path = write_instance(tmp_path, inst)
        wit = tmp_path / "w.json"
        wit.write_text("[99]")
        code, _ = run(capsys, "verify", "--input", path,
                      "--witness", str(wit))
        assert code == 2


class TestDecompose:
    def test_tree_width_one(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 7, 10)
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "decompose", "--input", path)
        assert code == 0 and json.loads(out)["width"] == 1

    def test_k4_width_three(self, capsys, tmp_path):
        from graphsack.model import Instance, validate_instance
        inst = validate_instance(Instance(
            variant=Variant.CONNECTED, n=4,
            edges=tuple((u, v) for u in range(4) for v in range(u + 1, 4)),
            weight=(0,) * 4, value=(0,) * 4, s=0))
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "decompose", "--input", path)
        assert code == 0 and json.loads(out)["width"] == 3

    def test_pins_in_every_bag(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 6, 11)
        path = write_instance(tmp_path, inst)
        code, out = run(capsys, "decompose", "--input", path,
                        "--pin", "0,2")
        assert code == 0
        doc = json.loads(out)
        assert all({0, 2} <= set(node["bag"]) for node in doc["nodes"])

    def test_bad_pin_exit_two(self, capsys, tmp_path):
        inst = random_instance(Variant.CONNECTED, "tree", 4, 12)
        path = write_instance(tmp_path, inst)
        code, _ = run(capsys, "decompose", "--input", path, "--pin", "9")
        assert code == 2
