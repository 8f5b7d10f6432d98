import csv
import io
import json
import os

import pytest

from charlie.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def _json(capsys, *argv):
    code, out = _run(capsys, *argv)
    return code, json.loads(out)


def test_chartable_document(capsys):
    code, doc = _json(capsys, "chartable", "--group", "gl", "--n", "2", "--q", "2")
    assert code == 0
    assert doc["command"] == "chartable"
    f = doc["fields"]
    assert f["base_field"]["p"] == 2 and f["base_field"]["e"] == 1
    assert f["conductor"] == 3 and f["cyclotomic_poly"] == [1, 1, 1]
    res = doc["result"]
    assert res["centralizer_orders"] == [6, 2, 3]
    assert sorted(int(d) for d in res["degrees"]) == [1, 1, 2]


def test_unitary_field_block(capsys):
    code, doc = _json(capsys, "count-real", "--group", "u", "--n", "2", "--q", "3")
    assert code == 0
    assert doc["fields"]["unitary_entry_field"]["e"] == 2
    assert doc["result"]["agree"]
    assert len(set(doc["result"]["counts"].values())) == 1


def test_csv_holds_integers_only(capsys):
    code, out = _run(capsys, "chartable", "--group", "gl", "--n", "2", "--q", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "row"
    for r in rows[1:]:
        if r and r[0] != "class":
            [int(x) for x in r]


def test_text_format(capsys):
    code, out = _run(capsys, "labels", "--group", "gl", "--n", "2", "--q", "2", "--format", "text")
    assert code == 0 and out.strip()


@pytest.mark.parametrize("argv", [
    ["orbits", "--kind", "phi", "--n", "2", "--q", "3"],
    ["orbits", "--kind", "thetatilde", "--n", "2", "--q", "3"],
    ["labels", "--group", "u", "--n", "3", "--q", "2", "--real-only"],
    ["labels", "--group", "gl", "--n", "3", "--q", "2", "--classes"],
    ["classes", "--group", "gl", "--n", "2", "--q", "3", "--coset"],
    ["chartable", "--group", "u", "--n", "2", "--q", "2", "--oracle"],
    ["chartable", "--group", "gl", "--n", "2", "--q", "2", "--extended"],
    ["symfunc-dump", "--grade", "3", "--t", "-1/2"],
])
def test_commands_are_byte_stable(capsys, argv):
    c1, a = _run(capsys, *argv)
    c2, b = _run(capsys, *argv)
    assert c1 == c2 == 0
    assert a == b
    json.loads(a)


def test_symfunc_dump_t_zero_is_schur(capsys):
    code, doc = _json(capsys, "symfunc-dump", "--grade", "3", "--t", "0")
    assert code == 0
    assert doc["result"]["grade"] == 3
    assert len(doc["result"]["partitions"]) == 3


def test_verify_schema_and_determinism(capsys):
    argv = ["verify", "--theorem", "6.6", "--group", "gl", "--n", "3", "--q", "3", "--deterministic"]
    code, a = _run(capsys, *argv)
    _, b = _run(capsys, *argv)
    assert code == 0 and a == b
    res = json.loads(a)
    assert {"theorem", "params", "verdict", "witnesses", "runtime_ms"} <= set(res)
    assert res["verdict"] == "PASS" and res["runtime_ms"] is None


def test_verify_fail_exit_code(capsys):
    code, doc = _json(capsys, "verify", "--theorem", "7.3", "--group", "gl", "--n", "3", "--q", "2")
    assert code == 1
    assert doc["verdict"] == "FAIL"


@pytest.mark.parametrize("argv", [
    ["verify", "--theorem", "9.9", "--group", "gl", "--n", "2", "--q", "2"],
    ["verify", "--theorem", "6.6", "--group", "gl", "--n", "2", "--q", "3"],
    ["chartable", "--group", "gl", "--n", "2", "--q", "6"],
    ["chartable", "--group", "gl", "--n", "0", "--q", "2"],
    ["nonsense"],
    ["symfunc-dump", "--grade", "2", "--t", "abc"],
])
def test_usage_errors_exit_2(capsys, argv):
    code = run(argv)
    capsys.readouterr()
    assert code == 2


def test_resource_bound_exit_3(capsys):
    code, doc = _json(capsys, "verify", "--theorem", "2.5", "--group", "both", "--n", "2", "--q", "4")
    assert code == 3
    assert doc["error"] == "resource_bound"
    assert doc["group"] == "U" and doc["q"] == 4


def test_env_override_needs_unsafe(capsys, monkeypatch):
    monkeypatch.setenv("CHARLIE_MAX_GROUP_ORDER", "10")
    code = run(["chartable", "--group", "gl", "--n", "2", "--q", "2"])
    capsys.readouterr()
    assert code == 2


def test_out_writes_file_and_figure(tmp_path, capsys):
    out = tmp_path / "tab.json"
    code = run(["chartable", "--group", "gl", "--n", "2", "--q", "3", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(out.read_text())["command"] == "chartable"
    png = tmp_path / "tab.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    first = png.read_bytes()
    run(["chartable", "--group", "gl", "--n", "2", "--q", "3", "--out", str(out)])
    capsys.readouterr()
    assert png.read_bytes() == first


@pytest.mark.parametrize("argv,name", [
    (["classes", "--group", "u", "--n", "2", "--q", "3"], "c.json"),
    (["count-real", "--group", "gl", "--n", "3", "--q", "2"], "r.json"),
    (["verify", "--theorem", "2.3", "--group", "both", "--n", "2", "--q", "2"], "v.json"),
])
def test_figures_for_other_commands(tmp_path, capsys, argv, name):
    out = tmp_path / name
    code = run(argv + ["--out", str(out)])
    capsys.readouterr()
    assert code == 0
    assert os.path.getsize(tmp_path / name.replace(".json", ".png")) > 0


def test_verify_all_quick(tmp_path, capsys):
    out = tmp_path / "all.json"
    code = run(["verify-all", "--profile", "quick", "--deterministic", "--out", str(out)])
    capsys.readouterr()
    doc = json.loads(out.read_text())["result"]
    assert [c["id"] for c in doc["criteria"]] == ["A1", "A2", "A3", "A6"]
    assert all(c["verdict"] == "PASS" for c in doc["criteria"])
    assert code == 0
    assert (tmp_path / "all.png").exists()


def test_sign_mutation_fails_acceptance(capsys):
    code = run(["verify-all", "--profile", "quick", "--sign-flip"])
    doc = json.loads(capsys.readouterr().out)["result"]
    verdicts = {c["id"]: c["verdict"] for c in doc["criteria"]}
    assert verdicts["A1"] == "FAIL"
    assert code == 1
