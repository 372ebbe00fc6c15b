import functools

import pytest

from evolutes import catalog


@functools.lru_cache(maxsize=None)
def fixture_curve(name, n=1024):
    return catalog.realize(catalog.FIXTURES[name], n)


@pytest.fixture
def realized():
    return fixture_curve


# one line per acceptance criterion, repeated in the terminal summary
VERDICTS = []


@pytest.fixture
def verdict():
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        VERDICTS.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
