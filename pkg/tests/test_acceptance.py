"""The fifteen acceptance criteria, one test each, with a pass/fail line per criterion."""
import json

import pytest

from conftest import record_acceptance
from flk.suite import CHECKS, run_check


@pytest.mark.parametrize("cid", [c[0] for c in CHECKS])
def test_acceptance(cid):
    rec = run_check(cid, timings=True)
    record_acceptance(f"{rec['id']}: {rec['status'].upper()} ({rec['seconds']:.1f} s)")
    detail = rec.get("error") or json.dumps(rec.get("computed"), default=str)[:400]
    assert rec["status"] == "pass", detail
