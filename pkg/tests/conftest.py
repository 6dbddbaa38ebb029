import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

_RESULTS: dict[str, tuple[bool, str]] = {}


class Acceptance:
    """Records one pass/fail line per acceptance criterion."""

    def __init__(self, key: str):
        self.key = key

    def record(self, passed: bool, detail: str) -> None:
        line = f"ACCEPTANCE {self.key} {'PASS' if passed else 'FAIL'} (exact) {detail}"
        print(line)
        _RESULTS[self.key] = (passed, line)
        assert passed, line


@pytest.fixture
def acceptance(request):
    marker = request.node.get_closest_marker("criterion")
    return Acceptance(f"criterion-{marker.args[0]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[key][1])
