import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

SPECS = Path(__file__).parent / "specs"


@pytest.fixture
def spec_dir():
    return SPECS


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, desc = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {desc}")
