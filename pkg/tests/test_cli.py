import json

import pytest

from sparsekit.cli import main
from sparsekit.formats import load_any, parse_certificate_json
from sparsekit.instances import CnfFormula, Graph


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _write(path, text):
    path.write_text(text, encoding="utf-8")


def test_stats_formats(workdir, capsys):
    _write(workdir / "k4.hyp",
           "p hyp 4 6\n1 2 0\n1 3 0\n1 4 0\n2 3 0\n2 4 0\n3 4 0\n")
    assert main(["stats", "k4.hyp"]) == 0
    assert capsys.readouterr().out.strip() == "n=4, edges: r=2:6"
    _write(workdir / "empty.cnf", "p cnf 0 0\n")
    assert main(["stats", "empty.cnf"]) == 0
    assert capsys.readouterr().out.strip() == "n=0, clauses: none"


def test_sparsify_and_stats_bound_annotation(workdir, capsys):
    _write(workdir / "k4.hyp",
           "p hyp 4 6\n1 2 0\n1 3 0\n1 4 0\n2 3 0\n2 4 0\n3 4 0\n")
    assert main(["sparsify", "k4.hyp", "out.hyp", "--exact",
                 "--report", "rep.json"]) == 0
    capsys.readouterr()
    assert main(["stats", "out.hyp"]) == 0
    assert capsys.readouterr().out.strip() == "n=4, edges: r=2:4 (bound 4)"
    report = json.loads((workdir / "rep.json").read_text())
    assert report["total_output"] == 4 and report["mode"] == "exact"


def test_sparsify_nae_formula(workdir, capsys):
    _write(workdir / "f.cnf", "p cnf 2 2\n1 2 0\n1 2 0\n")
    assert main(["sparsify", "f.cnf", "g.cnf", "--exact"]) == 0
    out = load_any(str(workdir / "g.cnf"))
    assert isinstance(out, CnfFormula) and out.num_clauses == 1
    err = capsys.readouterr()
    assert "kept 1/2 clauses" in err.out


def test_sparsify_modular_notice(workdir, capsys):
    _write(workdir / "f.cnf", "p cnf 2 1\n1 2 0\n")
    assert main(["sparsify", "f.cnf", "g.cnf"]) == 0
    assert "exact" in capsys.readouterr().err


def test_solve_exit_codes_and_certificate(workdir, capsys):
    _write(workdir / "tri.edge", "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    assert main(["solve", "hc", "tri.edge", "--cert", "c.json"]) == 10
    cert = parse_certificate_json((workdir / "c.json").read_text())
    capsys.readouterr()
    assert main(["check", "hc", "tri.edge", "c.json"]) == 0
    assert capsys.readouterr().out.strip() == "valid"
    _write(workdir / "path.edge", "p edge 3 2\ne 1 2\ne 2 3\n")
    assert main(["solve", "hc", "path.edge"]) == 20
    assert main(["check", "hc", "path.edge", "c.json"]) == 1


def test_solve_timeout_exit_code(workdir):
    clauses = "\n".join(f"{s1 * 1} {s2 * 2} {s3 * 3} 0"
                        for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1))
    _write(workdir / "f.cnf", "p cnf 3 8\n" + clauses + "\n")
    assert main(["solve", "nae", "f.cnf", "--nodes", "2"]) == 30


def test_solve_budget_handling(workdir):
    _write(workdir / "tri.edge", "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    assert main(["solve", "ds", "tri.edge", "--budget", "1"]) == 10
    assert main(["solve", "ds", "tri.edge"]) == 2          # missing budget
    assert main(["solve", "hc", "tri.edge", "--budget", "1"]) == 2
    assert main(["solve", "ds", "tri.edge", "--budget", "9"]) == 30  # refused


def test_gen_reduce_solve_pipeline(workdir):
    assert main(["gen", "cnf", "--out", "f.cnf", "--seed", "4",
                 "--param", "n=4", "--param", "d=3", "--param", "clauses=5"]) == 0
    assert main(["reduce", "naesat-hyp", "f.cnf", "h.hyp",
                 "--trace", "t.json"]) == 0
    trace = json.loads((workdir / "t.json").read_text())
    assert trace["output_size"]["vertices"] == 8
    nae_exit = main(["solve", "nae", "f.cnf"])
    col_exit = main(["solve", "2col", "h.hyp"])
    assert nae_exit == col_exit


def test_reduce_karp_pipeline(workdir):
    assert main(["gen", "digraph", "--out", "d.arc", "--seed", "1",
                 "--param", "n=5", "--param", "arcs=12"]) == 0
    assert main(["reduce", "hc-karp", "d.arc", "g.edge"]) == 0
    g = load_any(str(workdir / "g.edge"))
    assert isinstance(g, Graph) and g.num_vertices == 15
    assert main(["solve", "dhc", "d.arc"]) == main(["solve", "hc", "g.edge"])


def test_compose_cli_with_directory_inputs(workdir):
    for i in range(3):
        assert main(["gen", "eq-col-rbds", "--out", f"in/r{i}.json",
                     "--seed", str(i), "--param", "k=2",
                     "--param", "class_size=2", "--param", "n=3"]) == 2  # no dir
    (workdir / "in").mkdir()
    for i in range(3):
        assert main(["gen", "eq-col-rbds", "--out", f"in/r{i}.json",
                     "--seed", str(i), "--param", "k=2",
                     "--param", "class_size=2", "--param", "n=3"]) == 0
    assert main(["compose", "domset", "--inputs", "in", "--out", "g.edge",
                 "--trace", "t.json"]) == 0
    trace = json.loads((workdir / "t.json").read_text())
    assert trace["notes"]["budget"] == 4
    assert trace["input_size"]["t"] == 4   # padded from 3
    text = (workdir / "g.edge").read_text()
    assert text.startswith("c budget 4\n")
    g = load_any(str(workdir / "g.edge"))
    assert g.num_vertices == 39
    # the connected variant shares the construction, graph, and budget
    assert main(["compose", "conn-domset", "--inputs", "in",
                 "--out", "g2.edge"]) == 0
    assert (workdir / "g2.edge").read_text() == text


def test_compose_4col_and_solve(workdir):
    (workdir / "in").mkdir()
    for i, plant in enumerate(["yes", "no"]):
        assert main(["gen", "tsd", "--out", f"in/t{i}.json", "--seed", str(i),
                     "--plant", plant, "--param", "m=3", "--param", "n=1"]) == 0
    assert main(["compose", "4col", "--inputs", "in/t0.json,in/t1.json",
                 "--out", "g.edge"]) == 0
    assert main(["solve", "4col", "g.edge"]) == 10


def test_verify_cli_and_report_determinism(workdir):
    args = ["verify", "kernel-nae", "--trials", "4", "--seed", "2", "--exact",
            "--param", "n=6", "--param", "clauses=12"]
    assert main(args + ["--report", "r1.json"]) == 0
    assert main(args + ["--report", "r2.json"]) == 0
    assert (workdir / "r1.json").read_bytes() == (workdir / "r2.json").read_bytes()
    report = json.loads((workdir / "r1.json").read_text())
    assert report["ok"] and report["agreements"] == 4


def test_verify_exit_codes(workdir, capsys):
    # oracle refusal is exit 3, distinct from usage errors
    assert main(["verify", "kernel-nae", "--trials", "1", "--seed", "0",
                 "--param", "n=30", "--param", "clauses=5"]) == 3
    assert "refused" in capsys.readouterr().err
    assert main(["verify", "kernel-nae", "--trials", "1", "--seed", "0",
                 "--param", "n=bad"]) == 2


def test_gen_determinism_byte_identical(workdir):
    for name in ("a.json", "b.json"):
        assert main(["gen", "tsd", "--out", name, "--seed", "7",
                     "--param", "m=4", "--param", "n=2"]) == 0
    assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()


def test_parse_error_exit_code(workdir, capsys):
    _write(workdir / "bad.edge", "p edge 2 1\ne 1 1\n")
    assert main(["solve", "hc", "bad.edge"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_check_wrong_variant_is_usage_error(workdir):
    _write(workdir / "f.cnf", "p cnf 1 1\n1 0\n")
    _write(workdir / "c.json", '{"type": "coloring", "colors": [1]}\n')
    assert main(["check", "sat", "f.cnf", "c.json"]) == 2
