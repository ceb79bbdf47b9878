import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the end-of-run summary."""
    results = request.config.stash[_RESULTS]

    def record(number: int, ok: bool, detail: str) -> bool:
        results[number] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
