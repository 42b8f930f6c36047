"""Acceptance checks; each test prints one PASS/FAIL line."""

import pytest

from schatten import acceptance


@pytest.mark.parametrize("check", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
