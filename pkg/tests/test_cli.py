import subprocess
import sys

import pytest

from sparsebranch.cli import main
from sparsebranch.graphs import load_edge_list
from sparsebranch.sparsifier import load_sparse_rep


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def edge_lines(text):
    return [line for line in text.splitlines() if line and line[0].isdigit()]


class TestGenerate:
    def test_halfgraph(self, capsys):
        code, out, _ = run(capsys, "generate", "halfgraph", 2)
        g = load_edge_list(out)
        assert code == 0 and edge_lines(out) == ["1 3", "1 4", "2 4"] and g.sides is not None

    def test_grid_is_a_four_cycle(self, capsys):
        _, out, _ = run(capsys, "generate", "grid", 2, 2)
        g = load_edge_list(out)
        assert g.n == 4 and g.num_edges == 4 and (g.degrees() == 2).all()

    def test_matching(self, capsys):
        _, out, _ = run(capsys, "generate", "matching", 3)
        assert edge_lines(out) == ["1 2", "3 4", "5 6"]

    def test_seed_determinism(self, capsys):
        a = run(capsys, "generate", "random-bipartite", 6, 7, 0.3, "--seed", 5)[1]
        b = run(capsys, "generate", "random-bipartite", 6, 7, 0.3, "--seed", 5)[1]
        c = run(capsys, "generate", "random-bipartite", 6, 7, 0.3, "--seed", 6)[1]
        assert a == b != c

    def test_bad_parameters(self, capsys):
        code, _, err = run(capsys, "generate", "grid", 3)
        assert code == 2 and "parameters" in err


class TestSparsifyReconstruct:
    def test_edgeless_bipartite_gives_one_node(self, tmp_path, capsys):
        path = write(tmp_path, "e.txt", "s L 1\ns L 2\ns R 3\n")
        code, out, _ = run(capsys, "sparsify", "--bipartite", path)
        assert code == 0 and len(load_sparse_rep(out).nodes) == 1

    def test_single_bipartite_edge_gives_two_nodes(self, tmp_path, capsys):
        path = write(tmp_path, "e.txt", "s L a\ns R b\na b\n")
        _, out, _ = run(capsys, "sparsify", "--bipartite", path)
        sr = load_sparse_rep(out)
        assert len(sr.nodes) == 2 and len(sr.membership_edges()) == 4

    def test_bipartite_flag_needs_sides(self, tmp_path, capsys):
        path = write(tmp_path, "e.txt", "1 2\n")
        code, _, err = run(capsys, "sparsify", "--bipartite", path)
        assert code == 2 and "side" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "sparsify", "/nonexistent/graph.txt")
        assert code == 2 and "cannot read" in err

    def test_parse_error(self, tmp_path, capsys):
        path = write(tmp_path, "bad.txt", "1 2 3\n")
        code, _, err = run(capsys, "sparsify", path)
        assert code == 2 and "line 1" in err

    def test_file_round_trip(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "random-regular", 16, 3, 1)
        src = write(tmp_path, "g.txt", text)
        rep = tmp_path / "g.rep"
        assert run(capsys, "sparsify", src, "-o", rep)[0] == 0
        code, out, _ = run(capsys, "reconstruct", rep)
        assert code == 0 and out == text.split("\n", 1)[1]  # everything after the comment line

    def test_bipartite_file_round_trip_keeps_sides(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "grid", 3, 4)
        src = write(tmp_path, "g.txt", text)
        rep = tmp_path / "g.rep"
        run(capsys, "sparsify", "--bipartite", src, "-o", rep)
        _, out, _ = run(capsys, "reconstruct", rep)
        assert out == text.split("\n", 1)[1]

    def test_stats_block(self, tmp_path, capsys):
        path = write(tmp_path, "g.txt", "1 2\n2 3\n")
        _, out, _ = run(capsys, "sparsify", "--stats", path)
        assert "c stats height" in out and "c stats degeneracy_bound ok" in out

    def test_trace_goes_to_stderr(self, tmp_path, capsys):
        path = write(tmp_path, "g.txt", "s L 1\ns R 2\n1 2\n")
        _, out, err = run(capsys, "sparsify", "--bipartite", "--trace", path)
        assert "c trace node 0" in err and "remove 2" in err and "trace" not in out

    def test_byte_identical_across_thread_counts(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "grid", 5, 5)
        src = write(tmp_path, "g.txt", text)
        outs = {run(capsys, "sparsify", "--threads", t, src)[1] for t in (1, 4)}
        assert len(outs) == 1

    def test_bad_thread_count(self, tmp_path, capsys, monkeypatch):
        path = write(tmp_path, "g.txt", "1 2\n")
        monkeypatch.setenv("SPARSEBRANCH_THREADS", "many")
        assert run(capsys, "sparsify", path)[0] == 2

    def test_reconstruct_rejects_malformed(self, tmp_path, capsys):
        path = write(tmp_path, "r.rep", "root 0\nroot 1\n")
        code, _, err = run(capsys, "reconstruct", path)
        assert code == 2 and "root" in err


class TestVerify:
    def test_grid(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "grid", 6, 6)
        path = write(tmp_path, "g.txt", text)
        code, out, _ = run(capsys, "verify", "--cover", path)
        assert code == 0 and "FAIL" not in out and "PASS cover" in out

    def test_bipartite_mode(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "halfgraph", 4)
        path = write(tmp_path, "g.txt", text)
        code, out, _ = run(capsys, "verify", "--bipartite", path)
        assert code == 0 and "PASS height-bound" in out

    def test_rep_file_for_another_graph(self, tmp_path, capsys):
        a = write(tmp_path, "a.txt", "1 2\n2 3\n")
        b = write(tmp_path, "b.txt", "1 2\n2 3\n1 3\n")
        rep = tmp_path / "b.rep"
        run(capsys, "sparsify", b, "-o", rep)
        code, out, _ = run(capsys, "verify", "--rep", rep, a)
        assert code == 1 and "FAIL rep-file" in out

    def test_corrupted_rep_file(self, tmp_path, capsys):
        a = write(tmp_path, "a.txt", "1 2\n2 3\n")
        rep = tmp_path / "a.rep"
        run(capsys, "sparsify", a, "-o", rep)
        text = rep.read_text()
        # keep only the root: every pair then reads as a non-edge
        rep.write_text("".join(line + "\n" for line in text.splitlines() if not line.startswith(("node", "member"))))
        code, out, _ = run(capsys, "verify", "--rep", rep, a)
        assert code == 1 and "FAIL rep-file" in out
        rep.write_text(text.replace("root 0", "root zero"))
        assert run(capsys, "verify", "--rep", rep, a)[0] == 2


class TestOracleAndCover:
    def test_ladder_index_of_halfgraph(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "halfgraph", 3)
        assert run(capsys, "oracle", "ladder-index", write(tmp_path, "h.txt", text))[1].strip() == "3"

    def test_degeneracy_of_tree(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "path", 6)
        assert run(capsys, "oracle", "degeneracy", write(tmp_path, "p.txt", text))[1].strip() == "1"

    def test_near_twin_of_matching(self, tmp_path, capsys):
        _, text, _ = run(capsys, "generate", "matching", 2)
        path = write(tmp_path, "m.txt", text)
        assert run(capsys, "oracle", "near-twin", path)[1].strip() == "2"
        assert run(capsys, "oracle", "near-twin", "--pair", "--side", "R", path)[1].strip() == "2 4 2"

    def test_biclique(self, tmp_path, capsys):
        path = write(tmp_path, "c.txt", "1 2\n2 3\n3 4\n4 1\n")
        assert run(capsys, "oracle", "biclique", "--h", 2, path)[1].strip() == "true"
        assert run(capsys, "oracle", "biclique", "--h", 3, path)[1].strip() == "false"

    def test_cover_output(self, tmp_path, capsys):
        path = write(tmp_path, "e.txt", "a b\n")
        code, out, _ = run(capsys, "cover", path)
        assert code == 0
        assert out.splitlines()[1] in ("center a", "center b") and out.splitlines()[2:] == ["a b"]

    def test_stats(self, tmp_path, capsys):
        path = write(tmp_path, "g.txt", "1 2\n")
        code, out, _ = run(capsys, "stats", path)
        assert code == 0 and out.startswith("height")

    def test_bench(self, capsys):
        code, out, _ = run(capsys, "bench", "--sizes", 3, 4)
        assert code == 0 and "slope" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sparsebranch", "generate", "path", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1 2" in proc.stdout
