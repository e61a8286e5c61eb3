from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from nefcone import AbstractVariety, EndRing, Factor, ProductVariety

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def elliptic(mult=1, D=None, id="E"):
    end = EndRing("cm", D) if D is not None else EndRing()
    return ProductVariety((Factor(id, end, mult),))


@pytest.fixture
def E():
    return elliptic()


@pytest.fixture
def ExE():
    return elliptic(2)


@pytest.fixture
def cmExE():
    return elliptic(2, D=-4)


@pytest.fixture
def E1xE2():
    return ProductVariety((Factor("E1"), Factor("E2")))


@pytest.fixture
def gram_surface():
    # L1^2 = 2, L1.L2 = 4, L2^2 = 2
    return AbstractVariety(2, 2, ((2, 4), (4, 2)), (Fraction(1), Fraction(0)), True)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
