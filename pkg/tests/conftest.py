import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (
            f" ({detail})" if detail else "")
        print(ACCEPTANCE[number])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
