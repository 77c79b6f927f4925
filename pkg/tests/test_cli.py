import io
import subprocess
import sys

import pytest

from lincrown.cli import run
from lincrown.hypergraph import read_graph, write_graph


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def assert_one_line_error(err, kind):
    lines = err.splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error: {kind}: ")


def test_gen_crown_then_check(tmp_path):
    path = tmp_path / "c.hg"
    code, out, _ = call("gen", "--kind", "crown", "--r", 3, "--k", 3, "-o", path)
    assert code == 0
    g = read_graph(path)
    assert (g.n, g.m) == (9, 4)
    code, out, _ = call("check", path, "--k", 3)
    assert code == 1
    assert out.startswith("crown_free=no\nk=3\nbase=")
    assert "spoke3=" in out
    assert call("check", path, "--k", 3)[1] == out


def test_check_crown_free(tmp_path):
    path = tmp_path / "m.hg"
    call("gen", "--kind", "matching", "--m", 3, "--r", 3, "-o", path)
    code, out, _ = call("check", path, "--k", 1)
    assert code == 0 and out == "crown_free=yes\nk=1\n"


def test_gen_to_stdout_is_deterministic():
    args = ("gen", "--kind", "greedy_crown_free", "--n", 15, "--r", 3, "--k", 3, "--seed", 4)
    _, a, _ = call(*args)
    _, b, _ = call(*args)
    assert a == b
    assert "# generator: greedy_crown_free" in a and "prng=mt19937" in a


def test_gen_random_requires_seed():
    code, _, err = call("gen", "--kind", "random_linear", "--n", 10, "--r", 3, "--m", 5)
    assert code == 2
    assert_one_line_error(err, "usage")


def test_bounds_row():
    code, out, _ = call("bounds", "--n", 100, "--r", 3, "--k", 3)
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("n,r,k,s")
    assert "500/3" in row


def test_bounds_bad_k():
    code, _, err = call("bounds", "--n", 10, "--r", 3, "--k", 5)
    assert code == 2
    assert_one_line_error(err, "usage")


def test_kmap(tmp_path):
    path = tmp_path / "c.hg"
    call("gen", "--kind", "crown", "--r", 3, "--k", 2, "-o", path)
    code, out, _ = call("kmap", path)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "edge,vertices,k,weight"
    assert lines[1].split(",")[2] == "2"
    assert lines[-1].startswith("sum,,,")


def test_weighted(tmp_path):
    path = tmp_path / "g.hg"
    call("gen", "--kind", "greedy_crown_free", "--n", 14, "--r", 3, "--k", 3, "--seed", 2, "-o", path)
    clean = tmp_path / "clean.hg"
    write_graph(read_graph(path).without_isolated(), clean)
    code, out, _ = call("weighted", clean, "--k", 3)
    assert code == 0 and out.endswith("holds=true\n")


def test_weighted_refuses_crown(tmp_path):
    path = tmp_path / "c.hg"
    call("gen", "--kind", "crown", "--r", 3, "--k", 3, "-o", path)
    code, _, err = call("weighted", path, "--k", 3)
    assert code == 4
    assert_one_line_error(err, "not-applicable")


def test_input_errors(tmp_path):
    code, _, err = call("check", tmp_path / "missing.hg", "--k", 1)
    assert code == 3
    assert_one_line_error(err, "input")
    bad = tmp_path / "bad.hg"
    bad.write_text("3 6 2\n0 1 2\n0 1 3\n")
    code, _, err = call("check", bad, "--k", 1)
    assert code == 3
    assert_one_line_error(err, "input")
    assert "line 3" in err


def test_usage_error():
    code, _, err = call("search", "--n", 6, "--r", 3)
    assert code == 2
    assert_one_line_error(err, "usage")
    code, _, err = call("search", "--n", 6, "--r", 3, "--forbid", "crown:9")
    assert code == 2


def test_search_writes_witness(tmp_path):
    path = tmp_path / "w.hg"
    code, out, _ = call("search", "--n", 6, "--r", 3, "--forbid", "p2", "-o", path)
    assert code == 0
    assert "max_edges=2" in out
    assert f"witness={path}" in out
    assert read_graph(path).m == 2
    _, out2, _ = call("search", "--n", 6, "--r", 3, "--forbid", "p2", "-o", path)
    assert out == out2


def test_search_budget(tmp_path):
    code, _, err = call("search", "--n", 9, "--r", 3, "--forbid", "crown:3", "--budget", 3,
                        "-o", tmp_path / "w.hg")
    assert code == 5
    assert_one_line_error(err, "budget")


def test_table(tmp_path):
    code, out, _ = call("table", "--r", 3, "--k", 3, "--n-from", 6, "--n-to", 8,
                        "--witness-dir", tmp_path)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert all(line.endswith(",pass") for line in lines[1:])
    assert len(list(tmp_path.iterdir())) == 3


@pytest.mark.slow
def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lincrown", "bounds", "--n", "9", "--r", "3", "--k", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.count("\n") == 2
