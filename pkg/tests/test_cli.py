import io
import subprocess
import sys

import pytest

from wordrep.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_NO, EXIT_OK, main
from wordrep.graphs import cycle, petersen, read_digraph, read_graph, wheel, write_graph
from wordrep.semitrans import is_semi_transitive
from wordrep.words import parse_word, verify


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin="": run(capsys, monkeypatch, argv, stdin)


def gen(cli, *args):
    code, out, _ = cli(["gen", *args])
    assert code == EXIT_OK
    return out


def test_gen_and_recognize(cli):
    w5 = gen(cli, "wheel", "5")
    assert read_graph(w5) == wheel(5)
    code, out, _ = cli(["recognize"], w5)
    assert code == EXIT_NO and out.startswith("non-representable")
    code, out, _ = cli(["recognize", "--format", "machine"], gen(cli, "co-t2"))
    assert code == EXIT_NO and "reason=no-semi-transitive-orientation" in out
    code, out, _ = cli(["recognize"], gen(cli, "petersen"))
    assert code == EXIT_OK and out == "representable\n"


def test_represent_then_check(cli, tmp_path):
    graph_file = tmp_path / "p.txt"
    graph_file.write_text(gen(cli, "petersen"))
    code, word_text, _ = cli(["represent", str(graph_file)])
    assert code == EXIT_OK and verify(parse_word(word_text), petersen())
    code, out, _ = cli(["check", str(graph_file)], word_text)
    assert code == EXIT_OK and out == "represents\n"
    code, out, _ = cli(["check", str(graph_file), "--format", "machine"], "1 2 1 2")
    assert code == EXIT_NO and out.startswith("represents=no\nreason=")


def test_orient(cli, tmp_path):
    c5 = gen(cli, "cycle", "5")
    code, out, _ = cli(["orient"], c5)
    d = read_digraph(out)
    assert code == EXIT_OK and d.underlying() == cycle(5) and is_semi_transitive(d)
    colors = tmp_path / "colors.txt"
    colors.write_text("1 2 1 2 3")
    code, out, _ = cli(["orient", "--coloring", str(colors)], c5)
    assert code == EXIT_OK and is_semi_transitive(read_digraph(out))
    colors.write_text("1 1 2 2 3")
    code, _, err = cli(["orient", "--coloring", str(colors)], c5)
    assert code == EXIT_INPUT and err
    code, _, _ = cli(["orient"], gen(cli, "wheel", "5"))
    assert code == EXIT_NO


def test_repnum(cli):
    code, out, _ = cli(["repnum"], gen(cli, "cocktail-apex", "3"))
    assert code == EXIT_OK and "repnum=3" in out
    code, out, _ = cli(["repnum", "--format", "machine"], gen(cli, "prism", "3"))
    assert code == EXIT_OK and "repnum=3" in out.splitlines()
    code, out, _ = cli(["repnum", "--format", "machine"], gen(cli, "wheel", "5"))
    assert code == EXIT_NO and out.startswith("representable=no")


def test_circle_and_clique(cli):
    code, out, _ = cli(["circle"], gen(cli, "cycle", "6"))
    assert code == EXIT_OK and out.startswith("circle graph")
    code, out, _ = cli(["circle", "--format", "machine"], gen(cli, "prism", "3"))
    assert code == EXIT_NO and out == "circle=no\n"
    code, out, _ = cli(["circle", "--budget", "10"], gen(cli, "petersen"))
    assert code == EXIT_BUDGET and "unknown" in out
    code, out, _ = cli(["clique", "--format", "machine"], gen(cli, "complete", "5"))
    assert code == EXIT_OK and "size=5" in out


def test_gen_variants(cli):
    out = gen(cli, "subdivision3-of", "complete", "4")
    g = read_graph(out)
    assert (g.n, g.m) == (22, 24)
    out = gen(cli, "petersen", "--graph6")
    assert read_graph(out) == petersen()


def test_bad_input(cli):
    assert cli(["recognize"], "3 1\n1 4\n")[0] == EXIT_INPUT
    assert cli(["recognize", "/no/such/file"])[0] == EXIT_INPUT
    assert cli(["gen", "wheel", "two"])[0] == EXIT_INPUT
    assert cli(["gen", "nonsense"])[0] == EXIT_INPUT
    assert cli(["check", "-"], "")[0] == EXIT_INPUT
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_INPUT


def test_budget_exhaustion(cli):
    code, out, _ = cli(["recognize", "--budget", "20"], gen(cli, "co-t2"))
    assert code == EXIT_BUDGET and out.startswith("unknown")
    code, _, err = cli(["represent", "--budget", "20"], gen(cli, "co-t2"))
    assert code == EXIT_BUDGET and "budget" in err


def test_shell_pipeline(tmp_path):
    graph = tmp_path / "c7.txt"
    graph.write_text(write_graph(cycle(7)))
    cmd = f"{sys.executable} -m wordrep represent {graph} | {sys.executable} -m wordrep check {graph}"
    done = subprocess.run(cmd, shell=True, capture_output=True, text=True, timeout=120)
    assert done.returncode == 0 and done.stdout == "represents\n"
