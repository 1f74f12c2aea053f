import pytest

from bmseq.core import build_table


@pytest.fixture(scope="session")
def table():
    # one row past 200 so column ratios at m = 200 are available
    return build_table(201)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
