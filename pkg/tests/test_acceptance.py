"""The thirteen acceptance criteria at full size, one pass/fail line each."""

import pytest

from ordcoh import acceptance, cech
from ordcoh.acceptance import run_check

from conftest import ACCEPTANCE_LINES

# seconds allowed for the criteria that state a runtime bound
TIME_LIMITS = {1: 10.0, 4: 30.0, 6: 10.0, 9: 20.0}


def _line(res) -> str:
    limit = TIME_LIMITS.get(res.id)
    bound = f" (limit {limit:.0f}s)" if limit else ""
    return f"criterion {res.id:2d} {res.outcome:<4} {res.seconds:7.2f}s{bound}  {res.name}"


@pytest.mark.parametrize("cid", sorted(acceptance.CHECKS))
def test_criterion(cid):
    res = run_check(cid, 0, "full")
    ACCEPTANCE_LINES.append(_line(res))
    print(_line(res))
    assert res.outcome == "pass", res.detail
    if cid in TIME_LIMITS:
        assert res.seconds <= TIME_LIMITS[cid]


def test_sign_mutation_is_caught(monkeypatch):
    monkeypatch.setattr(cech, "_sign", lambda i: 1)
    res = run_check(1, 0, "full")
    assert res.outcome == "fail"
    located = res.detail["failure"]
    assert located["target_block"] and located["source_block"]


def test_quick_profile_passes_within_a_minute():
    results = acceptance.run_suite(0, "quick", ids=range(1, 13))
    assert all(r.outcome == "pass" for r in results)
    assert sum(r.seconds for r in results) <= 60.0
