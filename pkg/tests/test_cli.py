from fractions import Fraction

import pytest

from netcache import Allocation, SolveResult
from netcache.cli import main
from netcache.fileformat import parse_instance_document, serialize_instance
from netcache.solvers import SolveStats
from netcache import solvers

TRIANGLE_CNF = "p 3 3\n1 2 0\n2 3 0\n1 3 0\n"


@pytest.fixture
def ex1_path(tmp_path, ex1):
    p = tmp_path / "ex1.nci"
    p.write_text(serialize_instance(ex1))
    return str(p)


@pytest.fixture
def ex2_path(tmp_path, ex2):
    p = tmp_path / "ex2.nci"
    p.write_text(serialize_instance(ex2))
    return str(p)


def test_solve_prints_exact_fraction(ex1_path, capsys):
    assert main(["solve", ex1_path, "--algo", "capdp"]) == 0
    assert capsys.readouterr().out == "3/5\n"


def test_solve_threshold_no(ex1_path, capsys):
    assert main(["solve", ex1_path, "--ell", "7/10"]) == 1
    assert capsys.readouterr().out == "3/5\nNO\n"


def test_solve_threshold_yes_with_witness(ex2_path, capsys):
    assert main(["solve", ex2_path, "--ell", "1/1", "--witness"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["1/1", "YES", "store c1 s1", "store c2 s2"]


def test_solve_triangle_brute(tmp_path, triangle_instance, capsys):
    p = tmp_path / "tri.nci"
    p.write_text(serialize_instance(triangle_instance))
    assert main(["solve", str(p), "--algo", "brute"]) == 0
    assert capsys.readouterr().out == "5/2\n"


def test_analyze(ex2_path, capsys):
    assert main(["analyze", ex2_path]) == 0
    out = capsys.readouterr().out
    assert "C=2 U=1 S=2 K=2 delta=2 lambda=2" in out
    assert "variant=HetNC-U" in out
    assert "bound capdp=" in out


def test_reduce_nae(tmp_path, capsys):
    src = tmp_path / "tri.cnf"
    src.write_text(TRIANGLE_CNF)
    out_path = tmp_path / "tri.nci"
    assert main(["reduce", "--from", "nae3sat", str(src), "-o", str(out_path)]) == 0
    inst, threshold = parse_instance_document(out_path.read_text())
    assert len(inst.caches) == 3
    assert set(inst.contents) == {"True", "False"}
    assert threshold == 3


def test_reduce_rejects_bad_formula(tmp_path, capsys):
    src = tmp_path / "bad.cnf"
    src.write_text("p 1 1\n1 1 0\n")
    assert main(["reduce", "--from", "nae3sat", str(src)]) == 7


def test_transform_case3(tmp_path, capsys):
    inst_doc = (
        "netcache-instance v1\n"
        "content s1 1\ncontent s2 1\ncontent s3 1\n"
        "cache c1 3\n"
        "user u1 1/1\nrequest u1 s1 1/1\n"
        "edge c1 u1\n"
    )
    p = tmp_path / "k3.nci"
    p.write_text(inst_doc)
    assert main(["transform", str(p), "--case", "3"]) == 0
    out, _ = parse_instance_document(capsys.readouterr().out)
    assert set(out.caches) == {"c1#1", "c1#2", "c1#3"}


def test_transform_rejects_mixed_sizes(ex2_path, capsys):
    assert main(["transform", ex2_path, "--case", "4"]) == 5


def test_transform_output_roundtrips(ex1_path, tmp_path, capsys):
    out_path = tmp_path / "t.nci"
    assert main(["transform", ex1_path, "--case", "1", "-o", str(out_path)]) == 0
    doc = out_path.read_text()
    inst, _ = parse_instance_document(doc)
    assert serialize_instance(inst) == doc


def test_missing_file_is_exit_2(capsys):
    assert main(["solve", "/nonexistent.nci"]) == 2


def test_parse_error_is_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.nci"
    p.write_text("netcache-instance v1\nuser u1 1/0\n")
    assert main(["solve", str(p)]) == 2


def test_validation_error_is_exit_3(tmp_path, capsys):
    p = tmp_path / "bad.nci"
    p.write_text(
        "netcache-instance v1\ncontent s1 1\nuser u1 1/1\nrequest u1 s1 9/10\n"
    )
    assert main(["solve", str(p)]) == 3


def test_verify_is_deterministic(capsys):
    assert main(["verify", "--seed", "3", "--trials", "16"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--seed", "3", "--trials", "16"]) == 0
    assert capsys.readouterr().out == first
    assert first.endswith("passed 16/16\n")


def test_verify_zero_trials(capsys):
    assert main(["verify", "--trials", "0"]) == 0
    assert capsys.readouterr().out == "passed 0/0\n"


def test_bench_ex2_rows(ex2_path, capsys):
    assert main(["bench", ex2_path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "algorithm,states_explored,elapsed_ms,optimum"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["brute", "capdp"]
    assert {r[3] for r in rows} == {"1/1"}


def test_bench_generator_spec(capsys):
    assert main(["bench", "--gen", "c=2,k=60,s=120,u=40"]) == 0
    lines = capsys.readouterr().out.splitlines()
    capdp_row = next(line for line in lines if line.startswith("capdp,"))
    states = int(capdp_row.split(",")[1])
    assert states <= 61 * 61


def test_bench_requires_input(capsys):
    assert main(["bench"]) == 2


def test_bench_disagreement_fails(ex2_path, capsys, monkeypatch):
    def lying_solver(instance, **kwargs):
        return SolveResult(
            optimum=Fraction(99),
            witness=Allocation({}),
            stats=SolveStats("brute", 0, 0.0),
        )

    monkeypatch.setitem(solvers.SOLVERS, "brute", lying_solver)
    assert main(["bench", ex2_path]) == 8
