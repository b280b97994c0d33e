import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from wiretap.awtp import AwtpParams  # noqa: E402
from wiretap.evasive import build_evasive_system  # noqa: E402
from wiretap.fields import make_prime_field  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")

REFERENCE = dict(q=37, u=6, v=2, N=6, mu=1, d=2, w=4, b=2, rho_r=Fraction(1, 6), rho_w=Fraction(1, 3))


@pytest.fixture(scope="session")
def ref():
    return AwtpParams(**REFERENCE)


@pytest.fixture(scope="session")
def F13():
    return make_prime_field(13)


@pytest.fixture(scope="session")
def F37():
    return make_prime_field(37)


@pytest.fixture(scope="session")
def sys13(F13):
    return build_evasive_system(F13, 2, 1)


def pytest_terminal_summary(terminalreporter):
    lines = getattr(sys.modules.get("test_acceptance"), "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
