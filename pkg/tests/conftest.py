import pytest

from cfml import EnumConfig, SpfSieve, enumerate_semigroup
from helpers import ACCEPTANCE

def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title}: {detail}")


@pytest.fixture(scope="session")
def a5_1e5():
    """A=5, N=1e5 tally and residue histogram (moduli 1..30)."""
    return enumerate_semigroup(EnumConfig(alphabet=5, max_n=10**5, workers=1, moduli=30))


@pytest.fixture(scope="session")
def sieve_1e5():
    return SpfSieve(10**5)


@pytest.fixture(scope="session")
def sieve_1e6():
    return SpfSieve(10**6)
