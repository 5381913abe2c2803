import pytest

LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[LINES] = []


@pytest.fixture
def report(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash[LINES]

    def emit(n: int, name: str, ok: bool, detail: str) -> None:
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
        print(line)
        lines.append((n, line))

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[LINES]
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
