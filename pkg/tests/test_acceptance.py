"""One test per acceptance criterion; run with -s to see the pass/fail lines."""

import pytest

from symstoch.suite import CRITERIA, format_line, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"c{c.number:02d}")
def test_criterion(criterion):
    ok, detail, elapsed = run_criterion(criterion)
    print(format_line(criterion, ok, detail, elapsed))
    assert ok, detail
