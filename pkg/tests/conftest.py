import pytest
from fractions import Fraction

from tanint.engine import MemoTable
from tanint.oracle import NumericContext
from tanint.symvalue import CATALAN_ATOM, LN2_ATOM, PI, PI_LN2_ATOM, SymValue, pi_pow

from reference_rows import EVEN_P1, ODD_P1


def even_row(n):
    pi2, pi, rat, ln2 = EVEN_P1[n]
    return SymValue(rat, {pi_pow(2): pi2, PI: pi, LN2_ATOM: ln2})


def odd_row(n, row=None):
    sign, a, b = row or ODD_P1[n]
    # (pi/8) ln2 + int ln cos = (pi/8) ln2 + G/2 - (pi/4) ln2 = G/2 - (pi/8) ln2
    s1 = SymValue(0, {CATALAN_ATOM: Fraction(1, 2), PI_LN2_ATOM: Fraction(-1, 8)})
    return s1.scale(sign) + SymValue(b, {PI: a})


@pytest.fixture
def memo():
    return MemoTable()


@pytest.fixture(scope="session")
def ctx50():
    return NumericContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return NumericContext(30)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
