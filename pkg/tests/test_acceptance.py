"""Runs every acceptance criterion and prints one PASS/FAIL line each."""

import pytest

from isbellkit import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=lambda c: c.__name__)
def test_criterion(criterion, capsys):
    res = criterion(seed=0)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
