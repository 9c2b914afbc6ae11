from pathlib import Path

import pytest

from nslen.core.constructions import build

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def s3():
    return build("symmetric(3)")


@pytest.fixture(scope="session")
def s4():
    return build("symmetric(4)")


@pytest.fixture(scope="session")
def a4():
    return build("alternating(4)")


@pytest.fixture(scope="session")
def a5():
    return build("alternating(5)")


@pytest.fixture(scope="session")
def s5():
    return build("symmetric(5)")


@pytest.fixture(scope="session")
def psl27():
    return build("psl2(7)")


@pytest.fixture(scope="session")
def s4xa5():
    return build("direct(symmetric(4),alternating(5))")


@pytest.fixture(scope="session")
def c5wrc5():
    return build("wreath(cyclic(5),cyclic(5))")


@pytest.fixture(scope="session")
def a5wrc5():
    return build("wreath(alternating(5),cyclic(5))")
