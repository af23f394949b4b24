import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion_line(request):
    """Write one PASS/FAIL line to the terminal and keep it for the summary."""
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(criterion: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
        _LINES.append(line)
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
