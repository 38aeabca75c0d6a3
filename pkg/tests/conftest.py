import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion for the end-of-run summary.

    Usage: ``with criterion(3, "what is checked") as note: ...``; ``note``
    appends details to the printed line.
    """
    from contextlib import contextmanager

    @contextmanager
    def record(number: int, title: str):
        details: list[str] = []
        try:
            yield details.append
        except BaseException:
            ACCEPTANCE[number] = (False, "; ".join([title, *details]))
            raise
        ACCEPTANCE[number] = (True, "; ".join([title, *details]))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
