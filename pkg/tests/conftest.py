import pytest

from faultembed.fabric import apply_faults, build_fabric

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(rec):
        head = rec[0].split()[0]
        num = int("".join(ch for ch in head if ch.isdigit()))
        return num, rec[0]

    for crit, ok, detail in sorted(_ACCEPTANCE, key=order):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {crit}: {detail}")


@pytest.fixture
def f22_one_dead():
    """F(2,2) with v(1,1,1) dead."""
    return apply_faults(build_fabric(2, 2), [1])
