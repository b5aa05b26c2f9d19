import pytest

from macdonald_kl import iter_weight_box, parse_system


def pytest_addoption(parser):
    parser.addoption(
        "--radius",
        type=int,
        default=1,
        help="Radius of the weight box used by property tests.",
    )


@pytest.fixture(scope="session")
def radius(pytestconfig):
    return pytestconfig.getoption("--radius")


@pytest.fixture(scope="session")
def A1():
    return parse_system("A1")


@pytest.fixture(scope="session")
def A2():
    return parse_system("A2")


@pytest.fixture(scope="session")
def B2():
    return parse_system("B2")


@pytest.fixture(scope="session")
def G2():
    return parse_system("G2")


@pytest.fixture(scope="session")
def box(radius):
    def weights(system):
        return list(iter_weight_box(system.rank, radius))

    return weights


@pytest.fixture(scope="session")
def A3():
    return parse_system("A3")
