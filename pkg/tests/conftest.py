import pytest

from omegastar.arith import sieve_primes, totient_table
from omegastar.omega import omega_star_table

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def primes_1e7():
    return sieve_primes(10**7 + 1)


@pytest.fixture(scope="session")
def omega_1e7(primes_1e7):
    return omega_star_table(10**7, primes_1e7)


@pytest.fixture(scope="session")
def phis_1e6():
    return totient_table(10**6)


@pytest.fixture(scope="session")
def acceptance_log():
    def log(criterion: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
