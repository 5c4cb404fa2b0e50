"""Acceptance suite: one test per verification criterion.

Each criterion runs at its stated (exact) tolerance and prints one
PASS/FAIL line; run with -s to see the lines as they complete.  Two
criteria encode formula values that exhaustive computation contradicts
(the r=2,3 two-letter product actions, and the diagonal-type action on
Sym(3), which is binary); those are expected to fail and are annotated
in the failure output rather than weakened here.
"""

import pytest

from relkit.verify import CRITERIA, run_criterion

KNOWN_FORMULA_CONFLICTS = {
    5: "two-letter product actions at r=2,3 compute RC 2; the closed "
       "formula predicts 3 (r=4 matches)",
    13: "the diagonal-type action on Sym(3) is binary (oracle-confirmed), "
        "so no inequivalent 4-tuple pair exists",
}


@pytest.mark.parametrize(
    "number,name",
    [(num, name) for num, name, _ in CRITERIA],
    ids=[f"criterion-{num:02d}-{name}" for num, name, _ in CRITERIA],
)
def test_criterion(number, name):
    result = run_criterion(number)
    status = "PASS" if result["passed"] else "FAIL"
    print(f"{status} criterion {number} ({name}) [{result['seconds']}s]", flush=True)
    failing = [c for c in result["checks"] if not c["ok"]]
    detail = "; ".join(
        f"{c['label']}: expected {c['expected']}, got {c['got']}" for c in failing
    )
    note = KNOWN_FORMULA_CONFLICTS.get(number)
    if note and failing:
        detail = f"{detail}  [known conflict: {note}]"
    assert result["passed"], detail
