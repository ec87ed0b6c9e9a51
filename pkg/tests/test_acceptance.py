"""One test per exit criterion; each prints a PASS/FAIL line and enforces its time limit."""

import pytest

from qgauss.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion-{c.number:02d}")
def test_criterion(criterion):
    result = run_criterion(criterion)
    print(result.line())
    assert result.passed, result.detail
    assert result.elapsed < criterion.limit, f"{result.elapsed:.1f}s over {criterion.limit}s"
