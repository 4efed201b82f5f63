import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonzero_rationals = small_rationals.filter(lambda q: q != 0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture
def fib():
    from recconv.model import LinearRecurrence

    return LinearRecurrence(2, (1, 1), (0, 1))


@pytest.fixture
def square():
    from recconv.model import PolynomialRecurrence

    return PolynomialRecurrence(1, {(2,): 1}, (-1,))


F = Fraction
