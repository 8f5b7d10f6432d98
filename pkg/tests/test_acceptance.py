"""Acceptance criteria A1-A10, exact arithmetic throughout (tolerance zero).

Each test prints one line "A<k>: PASS" or "A<k>: FAIL" and asserts the
verdict. A5 fails at (n, q) = (3, 2); see README.
"""
import pytest

from charlie.cli import CRITERIA, run_criterion

IDS = list(CRITERIA)


def _failed_checks(res):
    out = []
    for r in res["reports"]:
        for c in r.get("checks", []):
            if not c["ok"]:
                out.append(f"{r.get('theorem', r.get('group', '?'))} {r.get('params', '')}: {c['name']}")
    return out


@pytest.mark.parametrize("cid", IDS)
def test_criterion(cid, capsys):
    res = run_criterion(cid, deterministic=True)
    with capsys.disabled():
        print(f"\n{cid}: {res['verdict']}")
    assert res["verdict"] == "PASS", _failed_checks(res)
