"""Numbered acceptance criteria, one test each, at their stated tolerances."""
import pytest

from supent.acceptance import CHECKS

SEED = 42
LINES = []


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number):
    check = CHECKS[number](SEED)
    LINES.append(check.line())
    print(check.line())
    assert check.passed, check.line()
