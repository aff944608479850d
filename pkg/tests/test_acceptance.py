"""Acceptance gate: one test per criterion, one PASS/FAIL line per criterion.

Run standalone with ``python3 tests/test_acceptance.py``; under pytest the
lines are printed in the terminal summary.
"""
import pytest

from ncur.acceptance import CRITERIA, run_acceptance

_RESULTS = {}


@pytest.fixture(scope="module")
def results():
    if not _RESULTS:
        for r in run_acceptance():
            _RESULTS[r.number] = r
    return _RESULTS


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(results, number):
    r = results[number]
    print(r.line)
    assert r.passed, r.line


def acceptance_lines():
    return [r.line for _, r in sorted(_RESULTS.items())]


if __name__ == "__main__":
    import sys
    res = run_acceptance()
    for r in res:
        print(r.line)
    sys.exit(0 if all(r.passed for r in res) else 1)
