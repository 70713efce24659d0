"""Smoke tests for the pytww module (runnable standalone or under pytest)."""

import os
import subprocess
import sys
import tempfile

import pytww


def example_seven():
    g = pytww.Trigraph(7)
    for u, v in [(1, 2), (1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6),
                 (3, 5), (3, 6), (4, 5), (4, 7), (5, 7), (6, 7)]:
        g.add_black(u, v)
    return g


def test_verify_example():
    g = example_seven()
    seq = pytww.make_sequence(g, [(5, 6), (1, 4), (2, 8), (9, 7), (10, 3), (11, 12)])
    rep = pytww.verify(seq, 2)
    assert rep["accepted"], rep
    assert rep["width"] == 2
    assert not pytww.verify(seq, 1)["accepted"]


def test_solver_small():
    p4 = pytww.Trigraph(4)
    for v in range(1, 4):
        p4.add_black(v, v + 1)
    assert pytww.decide_at_most(p4, 0)["status"] == "no"
    res = pytww.twin_width_exact(p4)
    assert res["status"] == "exact"
    assert res["value"] == 1
    assert pytww.verify(res["witness"], 1)["accepted"]


def test_tree_and_subdivision():
    star = pytww.Trigraph(6)
    for v in range(2, 7):
        star.add_black(1, v)
    seq = pytww.tree_sequence(star)
    assert pytww.width(seq) <= 2

    k4 = pytww.Trigraph(4)
    for u in range(1, 5):
        for v in range(u + 1, 5):
            k4.add_black(u, v)
    seq4 = pytww.subdivision_sequence(k4, 3)
    assert pytww.verify(seq4, 4)["accepted"]


def test_trigraph_text_roundtrip():
    g = example_seven()
    text = pytww.write_trigraph(g)
    assert pytww.parse_trigraph(text) == g


def test_reduction_pipeline():
    clauses = [[1, 2, 3], [-1, -2, -3]]
    assignment = pytww.truth_table_sat(3, clauses)
    assert assignment is not None
    graph, manifest = pytww.reduce_cnf(3, clauses)
    seq = pytww.synthesize_witness(manifest, assignment)
    rep = pytww.verify(seq, 4)
    assert rep["accepted"], rep
    assert rep["width"] == 4


def test_cli_pipeline():
    cli = os.environ.get("TWW_CLI")
    if not cli or not os.path.exists(cli):
        return  # CLI not built in this configuration
    with tempfile.TemporaryDirectory() as tmp:
        cnf = os.path.join(tmp, "toy.cnf")
        with open(cnf, "w") as f:
            f.write("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")
        graph = os.path.join(tmp, "toy.tgf")
        manifest = os.path.join(tmp, "toy.json")
        seq = os.path.join(tmp, "toy.seq")
        subprocess.run([cli, "reduce", cnf, "--out", graph, "--manifest", manifest],
                       check=True, capture_output=True)
        subprocess.run([cli, "witness", graph, manifest, "--assignment", "auto",
                        "--out", seq], check=True, capture_output=True)
        done = subprocess.run([cli, "verify", graph, seq, "--d", "4"],
                              capture_output=True, text=True)
        assert done.returncode == 0, done.stdout + done.stderr


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"{name}: ok")
            except AssertionError as exc:
                print(f"{name}: FAIL {exc}")
                failures += 1
    return failures


if __name__ == "__main__":
    sys.exit(main())
