import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from threerank.cli import main, parse_config, run

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def invoke(*argv, workers=None):
    args = list(argv) + ([] if workers is None else ["--workers", str(workers)])
    cfg = parse_config(args)
    out, err = io.StringIO(), io.StringIO()
    status = run(cfg, out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    return Registry().with_resources(resources)


def validate(doc, name, registry):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)


def test_classgroup_json_example():
    status, out, _ = invoke("classgroup", "-23", "--format", "json")
    assert status == 0
    assert out == '{"discriminant": -23, "order": 3, "elementary_divisors": [3], "three_rank": 1}\n'


def test_classgroup_real_and_schema(registry):
    status, out, _ = invoke("classgroup", "229", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["order"] == 3 and doc["three_rank"] == 1
    validate(doc, "ClassGroupStructure", registry)


def test_km_check_table_row():
    status, out, _ = invoke("km-check", "1", "1")
    assert status == 0
    header, row = out.splitlines()
    assert header.split() == ["u", "v", "disc_f", "K-1", "K-2", "K-3", "K-4", "all", "field_disc"]
    assert row.split() == ["1", "1", "-23", "yes", "yes", "yes", "K41", "yes", "-23"]


def test_km_check_json(registry):
    status, out, _ = invoke("km-check", "274", "417", "--format", "json")
    doc = json.loads(out)
    assert status == 0
    validate(doc["verdict"], "KMVerdict", registry)
    validate(doc["instance"], "KMInstance", registry)
    assert doc["verdict"]["k4_branch"] == "none"


def test_rank3():
    status, out, _ = invoke("rank3", "-4027", "--format", "json")
    assert status == 0 and json.loads(out) == {"discriminant": -4027, "three_rank": 2}


def test_search_triples_csv_and_json(registry):
    status, out, _ = invoke("search-triples", "7", "10", "--format", "csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,z"
    assert "5,1,1" in lines and "-5,1,1" in lines
    status, out, _ = invoke("search-triples", "7", "10", "--format", "json")
    validate(json.loads(out), "TripleSearchResult", registry)


def test_forms_csv():
    status, out, _ = invoke("forms", "-23", "--format", "csv")
    assert out == "a,b,c\n1,1,6\n2,-1,3\n2,1,3\n"


def test_csv_falls_back_to_table_for_scalars():
    _, csv_out, _ = invoke("classgroup", "-23", "--format", "csv")
    _, table_out, _ = invoke("classgroup", "-23")
    assert csv_out == table_out


def test_family_json(registry):
    status, out, _ = invoke("family", "139", "137", "1", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["violations"] == []
    validate(doc["instance"], "FieldInstance", registry)


def test_family_violations_exit_2():
    status, out, _ = invoke("family", "4", "2", "1", "--format", "json")
    assert status == 2
    assert "gcd_k_l" in json.loads(out)["violations"]


def test_verify_invalid_exit_2():
    status, out, err = invoke("verify", "4", "2", "1")
    assert status == 2 and out == "" and "gcd_k_l" in err


@pytest.mark.parametrize(
    "argv",
    [("classgroup", "-12"), ("classgroup", "-5"), ("km-check", "0", "3"), ("search-triples", "9", "10")],
)
def test_invalid_input_exit_2(argv):
    status, out, err = invoke(*argv)
    assert status == 2 and out == "" and err.startswith("threerank: error:")


def test_budget_exit_3():
    status, out, err = invoke("classgroup", "-327040372", "--class-budget", "100")
    assert status == 3 and out == "" and "budget" in err


def test_verify_budget_partial_record(registry):
    status, out, _ = invoke("verify", "139", "137", "5", "--format", "json", "--triple-bound", "20")
    assert status == 3
    doc = json.loads(out)
    validate(doc, "VerificationRecord", registry)
    assert doc["paper_claims"]["r_ge_2"] == "SKIPPED"
    # radicands exceed 2^53 and are written as decimal strings
    assert isinstance(doc["instance"]["radicand_minus"], str)
    assert int(doc["instance"]["radicand_minus"]) == 137**2 - 2 * 137 * 139**15


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classgroup"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "1", "2", "3", "--triple-bound", "0"])
    assert exc.value.code == 2


def test_workers_env(monkeypatch):
    monkeypatch.setenv("THREERANK_WORKERS", "4")
    assert parse_config(["rank3", "5"]).workers == 4
    assert parse_config(["rank3", "5", "--workers", "2"]).workers == 2
    monkeypatch.delenv("THREERANK_WORKERS")
    assert parse_config(["rank3", "5"]).workers == 1


def test_json_round_trip():
    for argv in [("classgroup", "-3299"), ("km-check", "274", "417"), ("family", "139", "137", "5")]:
        _, out, _ = invoke(*argv, "--format", "json")
        assert json.dumps(json.loads(out), ensure_ascii=False) + "\n" == out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "threerank", "classgroup", "-23", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 3


def test_table_shows_enum_values():
    status, out, _ = invoke("verify", "139", "137", "1", "--triple-bound", "20")
    assert status == 0
    assert "paper_claims.r_eq_s_plus_1" in out and "CONFIRMED" in out
    assert "ClaimStatus." not in out and "K4Branch." not in out
