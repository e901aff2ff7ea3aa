"""Acceptance battery: one test per criterion, one PASS/FAIL line each."""

import pytest

from gradenorm import suite


@pytest.mark.parametrize("number", sorted(suite.CRITERIA))
def test_criterion(number, capsys):
    result = suite.run_suite([number])[0]
    with capsys.disabled():
        print()
        print(result.line())
        for c in result.checks:
            if not c["pass"]:
                print("    failed:", c)
    assert result.passed, [c for c in result.checks if not c["pass"]]
