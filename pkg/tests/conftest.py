import time
from contextlib import contextmanager

import pytest

_LINES = []


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.details = []

    def note(self, text):
        self.details.append(text)


@pytest.fixture
def criterion():
    """``with criterion(3, "title") as c:`` records one PASS/FAIL line."""

    @contextmanager
    def run(number, title):
        c = _Criterion(number, title)
        t0 = time.perf_counter()
        try:
            yield c
        except BaseException as e:
            line = f"FAIL [{number}] {title}: {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
            _LINES.append((number, line))
            print(line)
            raise
        dt = time.perf_counter() - t0
        extra = "; ".join(c.details)
        line = f"PASS [{number}] {title} ({dt:.2f} s{'; ' + extra if extra else ''})"
        _LINES.append((number, line))
        print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES, key=lambda t: t[0]):
        terminalreporter.write_line(line)
