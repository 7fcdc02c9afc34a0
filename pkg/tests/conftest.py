"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion checked by this test")


@pytest.fixture
def record(request):
    """Tests call ``record(detail)`` with a short measured summary."""
    marker = request.node.get_closest_marker("criterion")
    name = marker.args[0] if marker else request.node.name

    def _record(detail: str) -> None:
        _RESULTS[request.node.nodeid] = (name, detail)

    return _record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    # a criterion whose setup fails is reported as failed, not dropped
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        item.config.stash.setdefault(_ROWS, []).append((item.nodeid, marker.args[0], rep.outcome))


_ROWS = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(_ROWS, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, name, outcome in rows:
        status = "PASS" if outcome == "passed" else "FAIL"
        detail = _RESULTS.get(nodeid, (name, ""))[1]
        terminalreporter.write_line(f"[{status}] {name}" + (f" :: {detail}" if detail else ""))
