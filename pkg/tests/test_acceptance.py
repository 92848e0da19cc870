"""Acceptance criteria 1-14, one test and one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly:
``python tests/test_acceptance.py [--fast]``.
"""

import sys

import pytest

from tandemwalks.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number, fast, acceptance_log):
    result = run_criterion(number, fast=fast)
    acceptance_log.append(result.line())
    print(result.line())
    assert result.passed, result.to_json()


if __name__ == "__main__":
    quick = "--fast" in sys.argv[1:]
    results = [run_criterion(n, fast=quick) for n in sorted(CRITERIA)]
    for r in results:
        print(r.line(), flush=True)
    sys.exit(0 if all(r.passed for r in results) else 1)
