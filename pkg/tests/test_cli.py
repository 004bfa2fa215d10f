import json
import subprocess
import sys

import pytest

from algmatroid.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, SCHEMA_VERSION, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, doc, out


def test_rank_examples(capsys):
    code, doc, _ = run(capsys, "rank", "fixture:circle", "--subset", "x y")
    assert code == EXIT_OK and doc["result"]["rank"] == 1
    assert doc["schema_version"] == SCHEMA_VERSION
    _, doc, _ = run(capsys, "rank", "fixture:nonpappus_f2")
    assert doc["result"]["rank"] == 3
    _, doc, _ = run(capsys, "rank", "fixture:circle", "--subset", "")
    assert doc["result"]["rank"] == 0


def test_circle_bases_and_circuits(capsys):
    _, doc, _ = run(capsys, "circuits", "fixture:circle")
    assert doc["result"]["bases"] == [["x"], ["y"]]
    assert doc["result"]["circuits"] == [["x", "y"]]


def test_mixture_bases(capsys):
    _, doc, _ = run(capsys, "bases", "fixture:mixture")
    assert doc["result"]["n_bases"] == 112


def test_pl4_counts(capsys):
    _, doc, _ = run(capsys, "circuits", "fixture:pl4")
    r = doc["result"]
    assert (r["n_bases"], r["n_circuits"]) == (10560, 41346)
    assert r["circuit_search"]["method"] == "naive"


def test_pl4_orbit_counts(capsys):
    _, doc, _ = run(capsys, "circuits", "fixture:pl4", "--action")
    r = doc["result"]
    assert (r["n_bases"], r["n_circuits"], r["group_order"]) == (10560, 41346, 24)
    assert sorted(c["orbit_size"] for c in r["circuit_classes"] if len(c["rep"]) == 4) == [6, 12, 12, 12, 24]
    assert len(r["base_classes"]) == 464
    _, doc, _ = run(capsys, "bases", "fixture:pl4", "--action")
    assert doc["result"]["n_bases"] == 10560 and "circuit_classes" not in doc["result"]


def test_decorate_examples(capsys):
    _, doc, _ = run(capsys, "decorate", "fixture:nonpappus_f2")
    assert doc["result"]["histograms"]["circuit_degree"] == {"1": 2, "2": 33, "3": 24, "4": 21, "5": 4, "7": 2}
    _, doc, _ = run(capsys, "decorate", "fixture:circle")
    (c,) = doc["result"]["decorated_circuits"]
    assert c["polynomial"] == "x^2 + y^2 - 1" and c["degree"] == 2
    assert [b["base_degree"] for b in doc["result"]["decorated_bases"]] == [2, 2]
    assert all("lambda" in b for b in doc["result"]["decorated_bases"])


def test_decorate_mixture_base_degrees(capsys):
    _, doc, _ = run(capsys, "decorate", "fixture:mixture", "--decorations", "bases,circuits,nm-locus")
    r = doc["result"]
    assert r["histograms"]["base_degree"] == {"1": 52, "2": 54, "3": 6}
    assert "polynomial" not in r["decorated_circuits"][0]
    assert r["circuit_search"]["certificate"] == {"minimal": True, "closed": True, "complete": True}
    assert r["nm_locus"]["form"] in ("principal", "intersection")


SYMMETRIC = """
[field]
QQ
[parameters]
s t
[coordinates]
a = s
b = t
c = s*t
[action]
(1 2)
"""


def test_decorate_with_action(capsys, tmp_path):
    f = tmp_path / "sym.problem"
    f.write_text(SYMMETRIC)
    _, doc, _ = run(capsys, "decorate", str(f), "--action")
    r = doc["result"]
    assert r["histograms"]["base_degree_weighted"] == {"1": 3}
    assert r["histograms"]["base_degree_classes"] == {"1": 2}
    (c,) = r["decorated_circuit_classes"]
    assert c["polynomial"] == "a*b - c" and c["orbit_size"] == 1
    assert run(capsys, "decorate", "fixture:twisted_cubic_param", "--action")[0] == EXIT_INPUT


def test_nm_locus_examples(capsys):
    _, doc, _ = run(capsys, "nm-locus", "fixture:torus")
    assert doc["result"]["nm_locus"]["generator"].startswith("x^5*y*z + 2*x^3*y^3*z")
    _, doc, _ = run(capsys, "nm-locus", "fixture:parabola_param")
    assert doc["result"]["nm_locus"]["generator"] == "t"
    _, doc, _ = run(capsys, "nm-locus", "fixture:line_param")
    assert doc["result"]["nm_locus"]["unit"] is True


def test_check_passes_with_counts(capsys):
    code, doc, _ = run(capsys, "check", "fixture:nonpappus_f4")
    assert code == EXIT_OK and doc["result"]["ok"]
    assert doc["result"]["axioms"]["checks"]["basis_exchange"]["count"] > 0


def test_check_cross_engine_pl4(capsys):
    code, doc, _ = run(capsys, "check", "fixture:pl4", "--cross-engine")
    assert code == EXIT_OK
    assert doc["result"]["cross_engine"] == {"ok": True, "count": 200, "disagreements": []}


def test_corrupted_bases_exit_code(capsys, tmp_path):
    _, doc, _ = run(capsys, "bases", "fixture:nonpappus_f2")
    bad = doc["result"]
    bad["bases"] = bad["bases"][1:]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, rep, out = run(capsys, "check", "fixture:nonpappus_f2", "--bases-file", str(f))
    assert code == EXIT_VERIFY
    assert rep["result"]["axioms"]["checks"]["basis_exchange"]["witness"]
    assert "verification failed" in out.err


def test_input_and_budget_errors(capsys, tmp_path):
    assert run(capsys, "rank", str(tmp_path / "missing.problem"))[0] == EXIT_INPUT
    assert run(capsys, "rank", "fixture:nope")[0] == EXIT_INPUT
    assert run(capsys, "rank", "fixture:nonpappus_f2", "--engine", "linear")[0] == EXIT_INPUT
    assert run(capsys, "rank", "fixture:circle", "--subset", "w")[0] == EXIT_INPUT
    assert run(capsys, "nm-locus", "fixture:nonpappus_f2")[0] == EXIT_INPUT
    assert run(capsys, "implicitize", "fixture:mixture", "--budget-pairs", "1")[0] == EXIT_BUDGET


def test_implicitize(capsys):
    _, doc, _ = run(capsys, "implicitize", "fixture:twisted_cubic_param")
    assert doc["result"]["generators"] == ["x2^2 - x1*x3", "x1*x2 - x3", "x1^2 - x2"]
    _, doc, _ = run(capsys, "implicitize", "fixture:twisted_cubic", "--subset", "x2 x3")
    assert doc["result"]["generators"] == ["x2^3 - x3^2"]


def test_byte_identical_output(tmp_path):
    outs = []
    for k in range(2):
        f = tmp_path / f"run{k}.json"
        subprocess.run(
            [sys.executable, "-m", "algmatroid", "decorate", "fixture:nonpappus_f4", "--seed", "5", "--out", str(f)],
            check=True,
        )
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]


def test_text_format(capsys):
    code, _, out = run(capsys, "decorate", "fixture:circle", "--format", "text")
    assert code == 0 and "circuit_degree" in out.out


def test_list_fixtures(capsys):
    assert main(["--list-fixtures"]) == 0
    assert "torus" in capsys.readouterr().out.split()


@pytest.mark.slow
def test_mapk_decorated_run(capsys):
    _, doc, _ = run(capsys, "decorate", "fixture:mapk")
    assert doc["result"]["n_errors"] == 0
