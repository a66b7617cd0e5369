from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lauricella_pade import instance_I1, instance_I2
from lauricella_pade.exact import Poly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-20, max_value=20)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))
polys = st.lists(rationals, max_size=6).map(Poly)


@pytest.fixture(scope="session")
def I1():
    return instance_I1()


@pytest.fixture(scope="session")
def I2():
    return instance_I2()


# -- acceptance summary -------------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record_criterion(key: str, passed: bool, detail: str) -> None:
    ACCEPTANCE[key] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k)):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")
