"""The ten acceptance criteria, each through the same runner the CLI uses.

Everything is exact unless stated; criterion 5 also runs in float mode at
its stated tolerance of 1e-9.  One PASS/FAIL line per criterion is printed
(and repeated in the terminal summary).
"""

import json

import pytest

from conftest import ACCEPTANCE_LINES
from hilbcomp.verify import CHECKS, PASS, RunConfig, run_check

CONFIG = RunConfig()


def _report(i: int, status: str, note: str = "") -> None:
    verdict = "PASS" if status == PASS else f"FAIL ({status})"
    line = f"criterion {i}: {verdict}  {CHECKS[i][0][3:]}{note}"
    print(line)
    ACCEPTANCE_LINES.append(line)


@pytest.mark.parametrize("i", sorted(CHECKS))
def test_criterion(i):
    rec = run_check(i, CONFIG)
    note = ""
    ok = rec.status == PASS
    if i == 5:
        # the same claim in floating point at the stated tolerance
        flt = run_check(5, RunConfig(mode="float", tolerance=1e-9))
        note = f"; float mode at 1e-9: {flt.status}"
        ok = ok and flt.status == PASS
    _report(i, PASS if ok else rec.status, note)
    assert ok, json.dumps(rec.evidence, default=str)[:2000]
