import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


from charp_dilog.gf import Fq  # noqa: E402


@pytest.fixture(scope="session")
def F5():
    return Fq(5)


@pytest.fixture(scope="session")
def F7():
    return Fq(7)


@pytest.fixture(scope="session")
def F11():
    return Fq(11)


@pytest.fixture(scope="session")
def F25(F5):
    return Fq(5, modulus=[2, 0, 1], base=F5)


@pytest.fixture(scope="session")
def F49(F7):
    return Fq(7, modulus=[1, 0, 1], base=F7)
