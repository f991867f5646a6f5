import json

import pytest

from conftest import taft_z2_tables
from hombialg import io
from hombialg.cli import main
from hombialg.deformations import TruncatedDeformation
from hombialg.linalg import LinMap
from hombialg.structures import build_taft, dual


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def taft_file(tmp_path):
    p = tmp_path / "taft2.json"
    p.write_text(io.dumps(io.bialgebra_to_json(build_taft(2))))
    return str(p)


@pytest.fixture
def deform_file(tmp_path):
    f, g = taft_z2_tables(2, 1, 0)
    D = TruncatedDeformation.from_terms(build_taft(2), [f], [g])
    p = tmp_path / "deform.json"
    p.write_text(io.dumps(io.deformation_to_json(D)))
    return str(p)


@pytest.mark.parametrize("lam", ["0", "1", "2", "3", "-1", "1/2"])
def test_validate_builder(capsys, lam):
    code, out, _ = run(capsys, "validate", "--builder", "taft", "--lambda", lam)
    assert code == 0 and "all axioms hold" in out


def test_validate_file_and_shorthand(capsys, taft_file):
    assert run(capsys, "validate", taft_file)[0] == 0
    assert run(capsys, "validate", "group:4:3")[0] == 0


def test_validate_broken_file_reports_witness(capsys, tmp_path):
    doc = io.bialgebra_to_json(build_taft(2))
    doc["mu"] = [e for e in doc["mu"] if e[:2] != [1, 1]]  # drop g.g = 1
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1
    assert "FAIL at" in out
    code, out, _ = run(capsys, "--json", "validate", str(p))
    rep = json.loads(out)
    assert not rep["all_pass"]
    assert any("witness" in c for c in rep["checks"])


def test_quiet(capsys):
    code, out, _ = run(capsys, "validate", "taft:2", "--quiet")
    assert code == 0 and out == ""


@pytest.mark.parametrize("bad,needle", [
    ('{"dim": 2, "mu": [[0, 0, 0, 0.5]], "delta": [], "eta": ["1","0"], "eps": ["1","1"], "alpha": []}',
     "exact rational"),
    ('{"dim": 2, "mu": [[0, 0, 5, "1"]], "delta": [], "eta": ["1","0"], "eps": ["1","1"], "alpha": []}',
     "index 5"),
    ('{"dim": 2, "mu": [[0, 0, 0, "1"], [0, 0, 0, "2"]], "delta": [], "eta": ["1","0"], '
     '"eps": ["1","1"], "alpha": []}', "duplicate"),
    ('{"dim": 2, "mu": []', "1:"),
    ('{"dim": 2}', "missing field"),
])
def test_input_errors_exit_2(capsys, tmp_path, bad, needle):
    p = tmp_path / "bad.json"
    p.write_text(bad)
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and needle in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent.json")
    assert code == 2 and "nonexistent" in err


def test_argparse_error_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


@pytest.mark.parametrize("lam,dims", [("2", (1, 0)), ("3", (1, 0))])
def test_cohomology(capsys, lam, dims):
    for n, h in zip((1, 2), dims):
        code, out, _ = run(capsys, "cohomology", str(n), "--builder", "taft", "--lambda", lam)
        assert code == 0
        assert f"dim H^{n} = {h}" in out.splitlines()[-1]


def test_cohomology_json_and_representatives(capsys, taft_file):
    code, out, _ = run(capsys, "--json", "cohomology", taft_file, "2")
    assert json.loads(out) == {"n": 2, "dim_C": 48, "dim_Z": 7, "dim_B": 7, "dim_H": 0}
    code, out, _ = run(capsys, "cohomology", taft_file, "1", "--representatives")
    assert "representative 1:" in out


def test_antipode(capsys):
    code, out, _ = run(capsys, "antipode", "taft:1")
    assert code == 0
    assert "S(x) = -gx" in out and "S(gx) = x" in out
    code, out, _ = run(capsys, "--json", "antipode", "group:5:1")
    doc = json.loads(out)
    assert doc["exists"] and doc["unique"] and all(doc["properties"].values())


def test_antipode_nonunique_warns(capsys):
    code, out, _ = run(capsys, "antipode", "taft:0")
    assert code == 0 and "not unique" in out


def test_dual_roundtrip(capsys, tmp_path, taft_file):
    out1 = tmp_path / "d.json"
    assert run(capsys, "dual", taft_file, "-o", str(out1))[0] == 0
    D = io.load_bialgebra(out1)
    assert D.same_structure(dual(build_taft(2)))
    out2 = tmp_path / "dd.json"
    run(capsys, "dual", str(out1), "-o", str(out2))
    assert io.load_bialgebra(out2).same_structure(build_taft(2))


def test_file_roundtrip_no_floats(taft_file):
    text = open(taft_file).read()
    doc = json.loads(text)
    for entry in doc["mu"] + doc["delta"] + doc["alpha"]:
        assert isinstance(entry[-1], str)
    assert io.load_bialgebra(taft_file).same_structure(build_taft(2))


def test_twist(capsys, tmp_path):
    beta = tmp_path / "beta.json"
    beta.write_text(json.dumps({"map": [[0, 0, "1"], [1, 1, "1"], [2, 2, "2"], [3, 3, "2"]]}))
    assert run(capsys, "twist", "taft:2", "--beta", str(beta))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([[0, 0, "1"], [1, 1, "1"], [2, 3, "1"], [3, 2, "1"]]))
    code, _, err = run(capsys, "twist", "taft:2", "--beta", str(bad))
    assert code == 1 and "morphism" in err


def test_tensor(capsys, tmp_path):
    p = tmp_path / "t.json"
    assert run(capsys, "tensor", "group:2:1", "taft:2", "-o", str(p))[0] == 0
    assert run(capsys, "validate", str(p))[0] == 0


def test_deform_residuals(capsys, deform_file):
    code, out, _ = run(capsys, "deform", deform_file, "residuals")
    assert code == 0 and "order 1: pass" in out


def test_deform_obstruction(capsys, deform_file):
    code, out, _ = run(capsys, "--json", "deform", deform_file, "obstruction")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 2 and doc["extendable"]


def test_deform_normalize_and_gauge(capsys, tmp_path, deform_file):
    nd, ng = tmp_path / "n.json", tmp_path / "g.json"
    code, _, _ = run(capsys, "deform", deform_file, "normalize-unit",
                     "-o", str(nd), "--gauge-output", str(ng))
    assert code == 0
    gd = tmp_path / "gd.json"
    assert run(capsys, "deform", deform_file, "gauge", "--phi", str(ng), "-o", str(gd))[0] == 0
    assert json.loads(gd.read_text()) == json.loads(nd.read_text())


def test_deform_twist(capsys, tmp_path, deform_file):
    beta = tmp_path / "beta.json"
    beta.write_text(json.dumps(io.endo_table(build_taft(2).alpha)))
    out = tmp_path / "tw.json"
    assert run(capsys, "deform", deform_file, "twist", "--beta", str(beta), "-o", str(out))[0] == 0
    assert run(capsys, "deform", str(out), "residuals")[0] == 0


def test_deform_broken_residuals(capsys, tmp_path):
    B = build_taft(2)
    D = TruncatedDeformation.from_terms(B, [LinMap(4, 1, 2, [((0, 0), 1)])],
                                        [LinMap.zero_map(4, 2, 1)])
    p = tmp_path / "bad.json"
    p.write_text(io.dumps(io.deformation_to_json(D)))
    code, out, _ = run(capsys, "deform", str(p), "residuals")
    assert code == 1 and "FAIL" in out and "residual" in out


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "hombialg", "validate", "taft:2", "--quiet"])
    assert r.returncode == 0
