import json
import subprocess
import sys

import pytest

from matchtree.cli import main
from matchtree.verify import (Budgets, VerificationRecord, predict_cycle, predict_dom_chordal, predict_dom_forest,
                              predict_path, verify_suite)
from matchtree.descriptor import HomotopyDescriptor as H
from matchtree.errors import InvalidParameter, NotAForest
from matchtree.graph import complete, cycle, path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestPredictions:
    def test_paths(self):
        assert predict_path(4, 3) == H.sphere(1)
        assert predict_path(5, 3) == H.contractible()
        assert predict_path(7, 3) == H.sphere(3)
        assert predict_path(8, 3) == H.sphere(3)
        with pytest.raises(InvalidParameter):
            predict_path(2, 3)

    def test_cycles(self):
        assert predict_cycle(4, 3) == H.wedge([1, 1, 1])
        assert predict_cycle(5, 3) == H.sphere(1)
        assert predict_cycle(8, 3) == H.wedge([3, 3, 3])
        assert predict_cycle(7, 4) == H.sphere(3)
        with pytest.raises(InvalidParameter):
            predict_cycle(2, 2)

    def test_dominance(self):
        assert predict_dom_chordal(complete(4)) == H.sphere(2)
        assert predict_dom_chordal(path(2)) == H.sphere(0)
        assert predict_dom_forest(path(7)) == H.sphere(2)
        with pytest.raises(InvalidParameter):
            predict_dom_chordal(cycle(4))
        with pytest.raises(NotAForest):
            predict_dom_forest(cycle(3))


class TestSuites:
    def test_figures(self):
        recs = verify_suite("figures")
        assert [r.status for r in recs] == ["pass"] * 3
        assert recs[2].details["critical"] == ["23", "45"]

    def test_cycles_k3(self):
        recs = verify_suite("cycles", ks=(3,), n_max=14)
        assert len(recs) == 12 and all(r.passed for r in recs)

    def test_budget_skips(self):
        recs = verify_suite("paths", ks=(3,), n_max=6, budgets=Budgets(faces=4))
        assert {r.status for r in recs} == {"skip"}

    def test_unknown_suite(self):
        with pytest.raises(InvalidParameter):
            verify_suite("nope")

    def test_record_json(self):
        r = VerificationRecord("s", "i", "pass", H.sphere(1), H.sphere(1), seconds=1.5)
        assert "seconds" not in r.to_json() and r.to_json(True)["seconds"] == 1.5


class TestCommands:
    def test_build(self, capsys):
        code, out, _ = run(capsys, "build", "--family", "path", "--n", "4", "--pattern", "p3")
        assert code == 0
        assert json.loads(out)["min_nonfaces"] == [[0, 1, 2], [1, 2, 3]]

    def test_morse(self, capsys):
        code, out, _ = run(capsys, "morse", "--family", "cycle", "--n", "8", "--pattern", "p3",
                           "--strategy", "cycle:3", "--check")
        doc = json.loads(out)
        assert code == 0 and doc["acyclic"] and doc["c"] == {"3": 3}

    def test_morse_table_tree(self, capsys):
        code, out, _ = run(capsys, "morse", "--family", "star", "--n", "3", "--complex", "ind",
                           "--format", "table", "--tree")
        assert code == 0 and "descriptor:" in out and "Σ(" in out

    def test_homology(self, capsys, tmp_path):
        f = tmp_path / "c.json"
        f.write_text(json.dumps({"n": 3, "min_nonfaces": [[0, 1, 2]]}))
        code, out, _ = run(capsys, "homology", "--complex", str(f))
        doc = json.loads(out)
        assert code == 0 and doc["betti"] == {"1": 1} and doc["chi"] == 0 and doc["torsion"] == {}

    def test_graph_file_and_out(self, capsys, tmp_path):
        g = tmp_path / "g.txt"
        g.write_text("n 3\n0 1\n1 2\n")
        o = tmp_path / "o.json"
        code, out, _ = run(capsys, "homology", "--graph", str(g), "--complex", "dom", "--out", str(o))
        assert code == 0 and out == ""
        assert json.loads(o.read_text())["betti"] == {"0": 1}

    def test_reduce_ops(self, capsys):
        code, out, _ = run(capsys, "reduce", "--family", "path", "--n", "8", "--pattern", "p3", "--op", "fold")
        assert code == 0 and json.loads(out)["folds"]
        code, out, _ = run(capsys, "reduce", "--family", "star", "--n", "3", "--complex", "ind", "--op", "split")
        assert code == 0 and json.loads(out)["homology"]["betti"] == {"0": 1}
        code, out, _ = run(capsys, "reduce", "--family", "path", "--n", "3", "--complex", "ind",
                           "--op", "nonface", "--set", "0,1")
        assert code == 1

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "figures")
        lines = [json.loads(x) for x in out.strip().splitlines()]
        assert code == 0 and [x["pass"] for x in lines] == [True] * 3
        code, out, _ = run(capsys, "verify", "paths", "--k", "3", "--n-max", "6", "--format", "table")
        assert code == 0 and "n=6,k=3" in out

    def test_errors(self, capsys):
        code, _, err = run(capsys, "build", "--family", "path")
        assert code == 1 and "error" in err
        code, _, err = run(capsys, "build", "--family", "path", "--n", "3", "--pattern", "q7")
        assert code == 1
        code, _, _ = run(capsys, "morse", "--family", "path", "--n", "3", "--strategy", "scripted")
        assert code == 1
        code, _, err = run(capsys, "homology", "--complex", "/nonexistent/c.json")
        assert code == 1 and err.startswith("error:")

    def test_deterministic(self, capsys):
        argv = ["verify", "dom-forest", "--count", "5", "--seed", "3"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "matchtree", "verify", "figures", "--format", "table"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "fig3-tree" in res.stdout
