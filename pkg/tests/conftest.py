from fractions import Fraction

import pytest


def naive_eval(syllables, q):
    """Evaluate a word by repeated single-letter multiplication (no closed forms)."""
    q = Fraction(q)
    m = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    letters = {
        ("a", 1): [[1, 1], [0, 1]],
        ("a", -1): [[1, -1], [0, 1]],
        ("b", 1): [[1, 0], [q, 1]],
        ("b", -1): [[1, 0], [-q, 1]],
    }
    for g, e in syllables:
        step = letters[(g, 1 if e > 0 else -1)]
        for _ in range(abs(e)):
            m = [
                [m[0][0] * step[0][0] + m[0][1] * step[1][0], m[0][0] * step[0][1] + m[0][1] * step[1][1]],
                [m[1][0] * step[0][0] + m[1][1] * step[1][0], m[1][0] * step[0][1] + m[1][1] * step[1][1]],
            ]
    return m


@pytest.fixture
def naive():
    return naive_eval


# acceptance criteria register their verdicts here; printed at session end
ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{verdict}  {name}")
