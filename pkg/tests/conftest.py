import time
from contextlib import contextmanager

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording a PASS/FAIL line.

    The yielded list collects short notes that are appended to the line.
    """

    @contextmanager
    def run(number, title, limit):
        notes = []
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield notes
            if time.perf_counter() - start < limit:
                status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            extra = f"; {'; '.join(notes)}" if notes else ""
            line = f"{status} [{number}] {title} ({elapsed:.2f}s, limit {limit:g}s{extra})"
            request.config.stash[_LINES].append(line)
            print(line)
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:g}s"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
