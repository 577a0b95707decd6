import io
import json
import re
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from sullivan import __version__
from sullivan.cli import main
from sullivan.dsl import parse_dsl
from sullivan.family import build_family

GOLDEN = Path(__file__).parent / "golden"
INVALID = sorted((GOLDEN / "invalid").glob("*.sullivan"))
VALID = sorted((GOLDEN / "valid").glob("*.sullivan"))


@pytest.fixture(scope="module")
def schema():
    text = resources.files("sullivan").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(schema, *argv):
    code, text = run(*argv, "--format", "json")
    payload = json.loads(text)
    jsonschema.validate(payload, schema)
    return code, payload


def test_golden_corpus_has_ten_invalid_inputs():
    assert len(INVALID) == 10


@pytest.mark.parametrize("path", INVALID, ids=lambda p: p.stem)
def test_invalid_input_exit_2_with_location(path, capsys):
    expected = json.loads((GOLDEN / "invalid" / "expected.json").read_text())[path.name]
    code, out = run("check", str(path))
    err = capsys.readouterr().err
    assert code == 2 and out == ""
    m = re.match(rf"{re.escape(str(path))}:(\d+):(\d+): \S", err)
    assert m, err
    assert [int(m.group(1)), int(m.group(2))] == expected


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_valid_input_checks(path, schema):
    code, payload = run_json(schema, "check", str(path))
    assert code == 0
    assert payload["result"]["d_squared"]["ok"] and payload["result"]["minimality"]["ok"]


def test_usage_errors(capsys):
    assert run("frobnicate")[0] == 2
    assert run("family", "--n", "1", "--bogus")[0] == 2
    assert run("verify", "--n", "1", "--lemma", "9.9")[0] == 2
    assert run("basis", str(VALID[0]))[0] == 2
    assert run("family", "--n", "0")[0] == 2
    assert run("family", "--n", "3")[0] == 2
    assert run("check", "/nonexistent/file.sullivan")[0] == 2
    assert "usage" in capsys.readouterr().err


def test_resource_limit_exit_2(capsys):
    code, _ = run("verify", "--n", "2", "--lemma", "2.3", "--max-basis", "50")
    assert code == 2
    assert "resource limit" in capsys.readouterr().err


def test_verify_all_json(schema):
    code, payload = run_json(schema, "verify", "--n", "1", "--lemma", "all")
    r = payload["result"]
    assert [c["cocycle_dim"] for c in r["no_low_cocycles"]["checks"]] == [0, 0, 0]
    assert (r["z_degree"]["h_dim"], r["w_degree"]["h_dim"]) == (43, 30)
    assert code == 1
    codes = {d["code"] for d in payload["discrepancies"]}
    assert codes == {"COCYCLES_NOT_BOUNDING_Z_DEGREE", "COCYCLES_NOT_BOUNDING_W_DEGREE"}


def test_verify_single_check_spellings(schema):
    for spelling in ("2.2", "no-low-cocycles"):
        code, payload = run_json(schema, "verify", "--n", "2", "--lemma", spelling)
        assert code == 0 and set(payload["result"]) == {"n", "no_low_cocycles"}
    code, payload = run_json(schema, "verify", "--n", "1", "--lemma", "w-degree")
    assert code == 1 and set(payload["result"]) == {"n", "w_degree"}


def test_family_emit_round_trips():
    code, text = run("family", "--n", "2", "--emit")
    assert code == 0
    assert parse_dsl(text) == build_family(2).algebra


def test_family_json(schema):
    code, payload = run_json(schema, "family", "--n", "1")
    assert code == 0 and payload["result"]["degrees"]["z"] == 71


def test_selfequiv_n1_json(schema):
    code, payload = run_json(schema, "selfequiv", "--n", "1")
    assert "p_y1 = p2^3 * p3" in json.dumps(payload)
    assert code == 1
    r = payload["result"]
    assert r["order"] == "infinite" and r["oracle"]["equal_to_staged"]


def test_selfequiv_file(schema):
    code, payload = run_json(schema, "selfequiv", str(GOLDEN / "valid" / "s3_cp2.sullivan"))
    assert code == 0
    assert payload["input"] == {"file": str(GOLDEN / "valid" / "s3_cp2.sullivan")}


def test_oracle_and_obstruction(schema):
    code, payload = run_json(schema, "oracle", "--n", "2", "--jobs", "2")
    assert code == 0 and payload["result"]["count"] == 4
    code, payload = run_json(schema, "obstruction", "--n", "1")
    assert code == 0
    assert "OBSTRUCTION_Y1_Y3_SWAPPED" in {d["code"] for d in payload["discrepancies"]}


def test_basis_and_cohomology_text_agrees_with_json(schema):
    f = str(GOLDEN / "valid" / "family_n1.sullivan")
    code, payload = run_json(schema, "basis", f, "--degree", "43", "--cap", "42")
    _, text = run("basis", f, "--degree", "43", "--cap", "42")
    assert code == 0
    assert text.splitlines()[0] == f"degree 43, cap 42: {payload['result']['size']} monomials"
    assert text.splitlines()[1:] == payload["result"]["monomials"]
    code, payload = run_json(schema, "cohomology", f, "--degree", "55", "--cap", "54")
    _, text = run("cohomology", f, "--degree", "55", "--cap", "54")
    r = payload["result"]
    assert (r["dim"], r["cocycle_dim"], r["coboundary_dim"]) == (30, 57, 27)
    assert text.splitlines()[0] == (f"H^55 (cap 54): dim {r['dim']} (cocycles {r['cocycle_dim']}, coboundaries "
                                    f"{r['coboundary_dim']}, chains {r['basis_size']})")


def test_json_round_trips(schema):
    _, text = run("oracle", "--n", "1", "--format", "json")
    payload = json.loads(text)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["version"] == __version__ and payload["timing_ms"] >= 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sullivan", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == __version__
