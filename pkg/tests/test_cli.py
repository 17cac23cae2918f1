import json
import subprocess
import sys

import pytest

from fusedhecke.cli import SUITES, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims_of_capped_quotient(capsys):
    code, out, _ = run(capsys, "dims", "--k", "2", "--n", "4", "--mode", "k1=0,k2=3")
    assert code == 0 and out.strip() == "192"


def test_dims_json_and_figure(capsys, tmp_path):
    fig = tmp_path / "dims.png"
    code, out, _ = run(capsys, "dims", "--n", "3", "--out", "json", "--figure", str(fig))
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 34 and data["status"] == "basis"
    assert fig.exists() and fig.stat().st_size > 0


def test_bratteli_dot(capsys):
    code, out, _ = run(capsys, "bratteli", "--levels", "3", "--filter", "avoiding", "--out", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert "1, 2, 7, 34" in out


def test_bratteli_text_json_and_figure(capsys, tmp_path):
    code, out, _ = run(capsys, "bratteli", "--levels", "2")
    assert code == 0
    assert [line.split("\t")[1] for line in out.strip().splitlines()] == ["1", "2", "8"]
    fig = tmp_path / "graph.png"
    code, out, _ = run(capsys, "bratteli", "--levels", "3", "--filter", "cap", "--k", "1", "--out", "json", "--figure", str(fig))
    assert json.loads(out)["level_dims"] == [1, 2, 6, 20]
    assert fig.exists()
    code, _, err = run(capsys, "bratteli", "--filter", "cap")
    assert code == 2 and "needs --k" in err


def test_output_is_byte_stable(capsys):
    first = run(capsys, "enumerate", "--n", "3", "--filter", "avoiding")[1]
    second = run(capsys, "enumerate", "--n", "3", "--filter", "avoiding")[1]
    assert first == second
    assert first.strip().endswith("# 34")


def test_mul(capsys):
    code, out, _ = run(capsys, "mul", "s1x1", "s1x1")
    assert code == 0
    assert out.strip() == "(1)*x1s1 + (-1)*s1x1 + (1)*x1s1x1s1"


def test_mul_from_json_file(capsys, tmp_path):
    code, out, _ = run(capsys, "mul", "x1", "s1", "--out", "json")
    path = tmp_path / "e.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "mul", f"@{path}", "1")
    assert code == 0 and out2.strip() == "(1)*x1s1"


def test_idempotent_routes_agree(capsys):
    outs = []
    for route in ("closed", "recursion", "product"):
        code, out, _ = run(capsys, "idempotent", "--n", "2", "--alpha", "-1", "--b", "2", "--route", route, "--mode", "k1=0,k2=4")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "x1s1x1s1", "--mode", "k1=0,k2=3")
    assert code == 0 and out.strip() == "(1)*x1 + (-1)*x1s1 + (1)*x1s1x1"


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "x1", "--n", "1", "--k", "2")
    assert code == 0 and out.strip() == "1*[{1,1} ; 2 -> 2] + 2*[{1,2} ; 2 -> 1]"
    code, _, err = run(capsys, "phi", "x1", "--n", "1")
    assert code == 2


@pytest.mark.parametrize(
    "suite,extra",
    [
        ("hecke-relations", []),
        ("corner-idempotents", ["--n", "2"]),
        ("complete-family", ["--n", "2"]),
        ("quotient-dims", []),
        ("phi-relations", ["--k", "2"]),
        ("sandwich-oracle", ["--k", "2", "--n", "2"]),
        ("kernel", ["--k", "2"]),
        ("lambda-coeffs", ["--k", "1"]),
        ("wedderburn", ["--n", "2"]),
    ],
)
def test_verify_suites(capsys, suite, extra):
    code, out, _ = run(capsys, "verify", "--suite", suite, *extra)
    assert code == 0, out
    assert "FAIL" not in out


def test_every_suite_is_covered():
    assert set(SUITES) == {
        "hecke-relations",
        "corner-idempotents",
        "complete-family",
        "quotient-dims",
        "phi-relations",
        "sandwich-oracle",
        "kernel",
        "lambda-coeffs",
        "wedderburn",
    }


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "corner-idempotents", "--n", "2", "--mode", "generic", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True


def test_verify_failure_exit_code(capsys):
    # at k1=0, k2=1 rank 2 is not semisimple
    code, _, err = run(capsys, "verify", "--suite", "corner-idempotents", "--n", "2", "--mode", "k1=0,k2=1")
    assert code == 2 and "semisimple" in err


def test_enumerate_kinds(capsys):
    assert run(capsys, "enumerate", "--kind", "fused", "--k", "2", "--n", "2")[1].strip().endswith("# 7")
    assert run(capsys, "enumerate", "--kind", "bipartitions", "--n", "3")[1].strip().endswith("# 10")
    assert run(capsys, "enumerate", "--kind", "tableaux", "--n", "2")[1].strip().endswith("# 6")
    assert run(capsys, "enumerate", "--n", "3", "--filter", "cap", "--k", "1")[1].strip().endswith("# 24")
    out = run(capsys, "enumerate", "--n", "2", "--out", "json")[1]
    assert json.loads(out)["count"] == 8


def test_usage_errors(capsys):
    assert run(capsys, "enumerate", "--kind", "fused")[0] == 2
    assert run(capsys, "mul", "x9", "s1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--mode", "nonsense"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fusedhecke", "dims", "--n", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "7"


def test_failing_check_exits_with_one(capsys, monkeypatch):
    from fusedhecke import cli
    from fusedhecke.report import Report

    def failing(args):
        rep = Report("stub")
        rep.add("always false", False)
        return rep

    monkeypatch.setattr(cli, "_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "kernel")
    assert code == 1 and "FAIL" in out
