import json
import subprocess
import sys
from fractions import Fraction

import pytest

from nilcontact import catalog
from nilcontact.cli import main
from nilcontact.dossier import run_dossier, verify_certificate
from nilcontact.errors import InvalidInput
from nilcontact.io import dumps, parse_input, serialize


def write(tmp_path, data, name="alg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


H3 = {"name": "h3", "dim": 3, "brackets": [{"on": [1, 2], "result": {"3": "1"}}],
      "contact_forms": {"eta": ["0", "0", "1"]}}


@pytest.mark.parametrize("name", catalog.names())
def test_round_trip(name):
    inp = catalog.get(name)
    data = serialize(inp)
    again = serialize(parse_input(json.loads(dumps(data))))
    assert again == data


def test_bundled_ex5d(ex5d):
    assert ex5d.algebra.dim == 5 and len(ex5d.algebra.brackets) == 4
    assert list(ex5d.contact_forms) == ["alpha5"] and len(ex5d.structures) == 1


def test_catalog_ex7d_grading(ex7d):
    assert serialize(ex7d)["grading"] == [1, 2, 3, 4, 1, 4, 5]


def test_reversed_bracket_pair_rejected():
    data = dict(H3, brackets=H3["brackets"] + [{"on": [2, 1], "result": {"3": "-1"}}])
    with pytest.raises(InvalidInput, match="i < j"):
        parse_input(data)


def test_duplicate_bracket_rejected():
    data = dict(H3, brackets=H3["brackets"] * 2)
    with pytest.raises(InvalidInput, match="duplicate"):
        parse_input(data)


def test_half_is_exact():
    data = dict(H3, brackets=[{"on": [1, 2], "result": {"3": "1/2"}}])
    assert parse_input(data).algebra.structure_constant(0, 1, 2) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [
    {"name": "x", "dim": 2, "brackets": [], "extra": 1},
    {"name": "x", "dim": 2, "brackets": [{"on": [1, 2], "result": {"2": 0.5}}]},
    {"name": "x", "dim": 2, "brackets": [{"on": [1, 3], "result": {"2": "1"}}]},
    {"dim": 2, "brackets": []},
])
def test_invalid_documents(bad):
    with pytest.raises(InvalidInput):
        parse_input(bad)


def test_malformed_json_exit_code(tmp_path, capsys):
    assert main(["betti", write(tmp_path, "{not json")]) == 2
    assert "malformed JSON" in capsys.readouterr().err


def test_jacobi_failure_exit_code(tmp_path):
    data = {"name": "bad", "dim": 3, "brackets": [
        {"on": [1, 2], "result": {"3": "1"}}, {"on": [1, 3], "result": {"1": "1"}}]}
    assert main(["validate", write(tmp_path, data)]) == 2


def test_missing_file_exit_code(tmp_path):
    assert main(["betti", str(tmp_path / "nope.json")]) == 2


def test_expect_flag(capsys):
    assert main(["lefschetz", "paper-ex5d", "--expect", "certified"]) == 0
    assert main(["lefschetz", "paper-ex5d", "--expect", "pass"]) == 1
    assert main(["lefschetz", "heisenberg3", "--expect", "pass"]) == 0
    assert main(["dossier", "heisenberg5", "--expect", "certified"]) == 1


def test_single_degree_lefschetz(capsys):
    assert main(["lefschetz", "paper-ex5d", "--form", "alpha5", "--p", "1",
                 "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outcome"] == "SOUND_FAIL"
    assert {"kind": "kernel", "beta": {"2": "1"}, "primitive": {"3,4,5": "-1"}} in out["witnesses"]


def test_commands_on_user_file(tmp_path, capsys):
    f = write(tmp_path, H3)
    assert main(["validate", f]) == 0
    capsys.readouterr()
    assert main(["betti", f, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [1, 2, 2, 1]
    assert main(["contact", f]) == 0
    assert "Reeb field: X3" in capsys.readouterr().out
    assert main(["contact", f, "--form", "missing"]) == 2


def test_kcontact_command(capsys):
    assert main(["kcontact", "paper-ex5d", "--structure", "k_contact", "--format", "json"]) == 0
    sec = json.loads(capsys.readouterr().out)
    assert sec["K_CONTACT"] and not sec["INVARIANT_SASAKIAN"]
    assert main(["kcontact", "paper-ex5d", "--structure", "nope"]) == 2


def test_catalog_commands(capsys):
    assert main(["catalog", "list", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 5
    assert main(["catalog", "get", "paper-ex7d", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["grading"] == [1, 2, 3, 4, 1, 4, 5]
    assert main(["catalog", "get", "nothing"]) == 2


def test_catalog_run_all(tmp_path):
    out = tmp_path / "all.json"
    assert main(["catalog", "run", "--all", "--format", "json", "--out", str(out)]) == 0
    dossiers = json.loads(out.read_text())
    assert [d["input"]["name"] for d in dossiers] == catalog.names()
    certified = {d["input"]["name"] for d in dossiers
                 for c in d["contact_forms"].values()
                 if c["lefschetz"]["overall"] == "NON_SASAKIAN_CERTIFIED"}
    assert certified == {"paper-ex5d", "paper-ex7d"}
    assert main(["verify-certificate", str(out)]) == 0


def test_verify_certificate_on_each_dossier(tmp_path):
    for name in catalog.names():
        out = tmp_path / f"{name}.json"
        assert main(["dossier", name, "--format", "json", "--out", str(out)]) == 0
        certs = json.loads(out.read_text())["certificates"]
        if name.startswith("heisenberg"):
            assert certs == []
            continue
        assert certs
        for c in certs:
            assert verify_certificate(c)[0]
        assert main(["verify-certificate", str(out)]) == 0


def test_tampered_certificate_fails(tmp_path):
    cert = run_dossier(catalog.get("paper-ex5d"))["certificates"][0]
    bad = json.loads(json.dumps(cert))
    key, val = next(iter(bad["primitive"].items()))
    bad["primitive"][key] = "7" if val != "7" else "5"
    assert not verify_certificate(bad)[0]
    assert main(["verify-certificate", write(tmp_path, bad)]) == 1
    assert main(["verify-certificate", write(tmp_path, {"x": 1}, "empty.json")]) == 2


def test_dossier_is_deterministic():
    a = dumps(run_dossier(catalog.get("paper-ex7d")))
    b = dumps(run_dossier(catalog.get("paper-ex7d")))
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nilcontact", "catalog", "list"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "paper-ex5d" in r.stdout
