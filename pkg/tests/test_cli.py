import json

import pytest

from kint.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_trefoil_preliminary(capsys):
    code, out, _ = run(capsys, "compute", "--input", "trefoil.json", "--degree", "2", "--normalization", "preliminary")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree_cap"] == 2 and doc["space"] == "A_prime_circle"
    assert {"diagram": "1212", "degree": 2, "coeff": "25/24"} in doc["terms"]


def test_compute_unknot_is_unit(capsys):
    code, out, _ = run(capsys, "compute", "--input", "unknot.json", "--degree", "4", "--normalization", "final-multiplicative")
    assert code == 0
    assert json.loads(out)["terms"] == [{"diagram": "", "degree": 0, "coeff": "1"}]


def test_compute_is_deterministic(capsys):
    first = run(capsys, "compute", "--input", "figure_eight", "--degree", "4")
    second = run(capsys, "compute", "--input", "figure_eight", "--degree", "4")
    assert first == second


def test_compute_framed(capsys):
    code, out, _ = run(capsys, "compute", "--input", "trefoil", "--degree", "2", "--normalization", "framed")
    assert code == 0
    doc = json.loads(out)
    assert doc["space"] == "A_circle"
    assert {"diagram": "11", "degree": 1, "coeff": "-3/2"} in doc["terms"]


@pytest.mark.parametrize(
    "argv",
    [
        ("compute", "--input", "trefoil.json", "--degree", "9"),
        ("compute", "--input", "trefoil.json", "--degree", "5", "--normalization", "framed"),
        ("analytic", "--morse", "trefoil", "--degree", "3"),
    ],
)
def test_cap_violations(capsys, argv):
    assert run(capsys, *argv)[0] == 4


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "compute", "--input", str(bad))[0] == 2
    bad.write_text(json.dumps({"slices": [{"event": "saddle"}]}))
    assert run(capsys, "compute", "--input", str(bad))[0] == 2
    assert run(capsys, "compute", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_validation_error(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"slices": [{"event": "max"}, {"event": "max"}, {"event": "min"}]}))
    code, _, err = run(capsys, "compute", "--input", str(f))
    assert code == 3 and "invalid presentation" in err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--skeleton", "circle")
    assert code == 0
    rows = [r.split("\t") for r in out.strip().splitlines()[1:]]
    framed = [int(r[3]) for r in rows if r[2] == "yes"]
    unframed = [int(r[3]) for r in rows if r[2] == "no"]
    assert framed == [1, 1, 2, 3, 6]
    assert unframed == [1, 0, 1, 1, 3]


def test_dims_line_matches_circle(capsys):
    _, circle, _ = run(capsys, "dims", "--skeleton", "circle")
    _, line, _ = run(capsys, "dims", "--skeleton", "line")
    dims = lambda text: [r.split("\t")[1:4] for r in text.strip().splitlines()[1:]]
    assert dims(circle) == dims(line)


@pytest.mark.parametrize("suite", ["trefoil", "wheels", "hump", "associator"])
def test_verify_passing_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0
    assert out.strip().endswith("PASS")


def test_verify_trefoil_reports_value(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "trefoil")
    assert "25/24" in out


def test_analytic_braid(capsys):
    code, out, _ = run(capsys, "analytic", "--braid", "twists3.json", "--degree", "1")
    assert code == 0
    terms = json.loads(out)["terms"]
    (one,) = [t for t in terms if t["degree"] == 1]
    assert abs(one["re"] - 3.0) < 1e-6


def test_analytic_linking(capsys):
    code, out, _ = run(capsys, "analytic", "--link", "hopf.json", "--linking")
    assert code == 0
    assert abs(abs(json.loads(out)["linking_number"]) - 1) < 1e-6


def test_analytic_compare(capsys):
    code, out, _ = run(capsys, "analytic", "--morse", "trefoil.json", "--degree", "2", "--compare", "trefoil.json")
    assert code == 0
    assert json.loads(out)["deviation"] < 2e-2


def test_analytic_non_convergence(capsys):
    assert run(capsys, "analytic", "--morse", "trefoil", "--tol", "1e-12")[0] == 5


def test_skein(capsys):
    code, out, _ = run(capsys, "skein", "--input", "figure_eight")
    assert code == 0
    doc = json.loads(out)
    assert doc["c"]["2"] == "-1"
    assert doc["j"]["0"] == "1"


def test_cache_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("KINT_CACHE_DIR", str(tmp_path))
    assert run(capsys, "dims", "--skeleton", "circle", "--max-degree", "3")[0] == 0
    assert any(p.suffix == ".json" for p in tmp_path.iterdir())


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code == 2
