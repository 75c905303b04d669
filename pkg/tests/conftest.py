import math

import pytest

_acceptance: list[tuple[str, str]] = []


def brute_divisors(n):
    return [t for t in range(1, n + 1) if n % t == 0]


def trial_division_is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for name, outcome in _acceptance:
            terminalreporter.write_line(f"{outcome:<7} {name}")


@pytest.fixture
def no_fault(monkeypatch):
    from apseq import grouping

    monkeypatch.setattr(grouping, "INJECT_FAULT", False)
