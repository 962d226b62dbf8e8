import pytest

from perfcodes.config import get_caps, set_caps
from perfcodes.group import close
from perfcodes.perm import parse_cycles


def group(n, *gens):
    return close([parse_cycles(g, n) for g in gens], n)


@pytest.fixture
def restore_caps():
    caps = get_caps()
    yield
    set_caps(caps)


# filled by test_acceptance.py, printed once at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
