import contextlib

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line for an acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, text: str):
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append(f"FAIL  criterion {number}: {text}")
            raise
        _ACCEPTANCE.append(f"PASS  criterion {number}: {text}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
