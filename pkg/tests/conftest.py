import pytest

_LINES = []


@pytest.fixture
def criterion():
    """``criterion(k, ok, detail)`` records one acceptance line and asserts it."""

    def record(k, ok, detail):
        line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _LINES.append((k, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES, key=lambda kv: kv[0]):
        terminalreporter.write_line(line)
