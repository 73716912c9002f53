import io
import json

import pytest

from filippov.catalog import aff, cross, heis
from filippov.cli import main, parse_subspace, parse_vector
from filippov.errors import PreconditionError
from filippov.fileio import dumps, save

from conftest import GF3, GF5, GF7, Q


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


@pytest.fixture
def aff3(tmp_path):
    p = tmp_path / "aff3.json"
    save(aff(GF5, 3), p)
    return str(p)


@pytest.fixture
def corrupted(tmp_path):
    obj = json.loads(dumps(heis(GF5, 3)))
    obj["brackets"].append({"args": [1, 2, 4], "value": {"1": "1"}})
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    return str(p)


def test_parse_vector():
    L = aff(GF5, 3)
    assert parse_vector(L, "e3") == L.e(2)
    assert parse_vector(L, "1,0,2") == (1, 0, 2)
    with pytest.raises(PreconditionError):
        parse_vector(L, "e9")
    assert parse_subspace(L, "e1;e2") == L.span([L.e(0), L.e(1)])


def test_validate_ok(aff3):
    code, res, _ = run_json("validate", aff3)
    assert code == 0 and res["schema"] == "filippov.report/1" and res["result"]["valid"]


def test_validate_corrupted(corrupted):
    code, res, _ = run_json("validate", corrupted)
    assert code == 1 and not res["result"]["valid"] and res["result"]["violations"] > 0


def test_info(aff3):
    code, res, _ = run_json("info", aff3)
    r = res["result"]
    assert code == 0 and r["dim"] == 3 and r["soluble"] and not r["nilpotent"]


def test_cartan_seed7(aff3):
    code, res, _ = run_json("cartan", aff3, "--seed", "7")
    assert code == 0 and res["result"]["dim"] == 2 and res["result"]["is_cartan"]
    assert res["result"]["cartan"] == [["1", "0", "0"], ["0", "1", "0"]]


def test_engel(aff3):
    code, res, _ = run_json("engel", aff3, "--string", "1,2")
    assert code == 0 and res["result"]["dim"] == 2 and res["result"]["certified"]


def test_engel_bad_string(aff3):
    assert run("engel", aff3, "--string", "1")[0] == 2


def test_series(aff3):
    code, res, _ = run_json("series", aff3, "--kind", "derived")
    assert code == 0 and res["result"]["dims"] == [3, 1, 0]


def test_frattini(aff3):
    code, res, _ = run_json("frattini", aff3)
    assert code == 0 and res["result"]["dim"] == 0


def test_split_and_conjugate(aff3):
    code, res, _ = run_json("split", aff3, "--ideal", "e3")
    assert code == 0 and res["result"]["complement"] == [["1", "0", "0"], ["0", "1", "0"]]
    code, res, _ = run_json("conjugate", aff3, "--ideal", "e3", "--complement", "1,0,1;e2")
    assert code == 0 and res["result"]["intersection_zero"]


def test_split_bad_ideal(aff3):
    assert run("split", aff3, "--ideal", "e1")[0] == 2


def test_theorems_pass(tmp_path):
    p = tmp_path / "h.json"
    save(heis(GF3, 2), p)
    code, res, _ = run_json("theorems", str(p))
    assert code == 0
    assert {c["name"]: c["status"] for c in res["result"]["checks"]}["jacobi"] == "pass"


def test_theorems_corrupted(corrupted):
    code, res, _ = run_json("theorems", corrupted)
    assert code == 1
    jac = next(c for c in res["result"]["checks"] if c["name"] == "jacobi")
    assert jac["status"] == "fail" and jac["counterexamples"]
    assert all(c["status"] == "skipped" for c in res["result"]["checks"] if c["name"] != "jacobi")


def test_other_commands_reject_corrupted(corrupted):
    code, res, _ = run_json("info", corrupted)
    assert code == 1 and res["result"]["defect"]


def test_theorems_unknown_item(aff3):
    assert run("theorems", aff3, "--suite", "bogus")[0] == 2


def test_cartan_field_too_small(tmp_path):
    p = tmp_path / "c.json"
    save(cross(GF3, 3), p)
    assert run("cartan", str(p))[0] == 3


def test_frattini_over_q(tmp_path):
    p = tmp_path / "q.json"
    save(aff(Q, 3), p)
    assert run("frattini", str(p))[0] == 3


def test_missing_file():
    assert run("info", "/nonexistent/x.json")[0] == 2


def test_usage_error():
    assert run("nonsense")[0] == 2


def test_catalog_text_is_canonical_file():
    code, out, _ = run("catalog", "--name", "heis", "--params", "n=3", "--field", "GF5")
    assert code == 0 and out == dumps(heis(GF5, 3))


def test_catalog_bad_params():
    assert run("catalog", "--name", "heis", "--params", "q=3")[0] == 2


def test_corpus(tmp_path):
    code, res, _ = run_json("corpus", "--field", "GF3", "--max-dim", "3", "-o", str(tmp_path / "c"))
    assert code == 0 and res["result"]["members"]
    first = res["result"]["members"][0]
    assert run("validate", first["file"])[0] == 0


def test_json_deterministic(aff3):
    for cmd in (["cartan", aff3, "--seed", "3"], ["conjugate", aff3, "--ideal", "e3", "--seed", "4"],
                ["theorems", aff3, "--seed", "1"]):
        a = run(*cmd, "--format", "json")
        b = run(*cmd, "--format", "json")
        assert a == b


def test_text_output(aff3):
    code, out, _ = run("cartan", aff3)
    assert code == 0 and "span(" in out
