"""The fourteen acceptance criteria, one test each.

Run with ``-s`` to see one PASS/FAIL line per criterion.
"""

import pytest

from ggtbench.acceptance import CHECKS, Result, run

LIMITS = {1: 1, 2: 30, 3: 1, 4: 5, 5: 30, 6: 10, 7: 60, 8: 1, 9: 60, 10: 5, 11: 1, 12: 30, 13: 5, 14: 30}


@pytest.mark.parametrize("number", [n for n, _, _ in CHECKS], ids=[f"criterion-{n:02d}" for n, _, _ in CHECKS])
def test_criterion(number):
    (result,) = run([number])
    print("\n" + result.line())
    assert isinstance(result, Result)
    assert result.ok is True
    assert result.seconds < LIMITS[number]


def test_all_fourteen_present():
    assert [n for n, _, _ in CHECKS] == list(range(1, 15))
