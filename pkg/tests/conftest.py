import pytest

from ppf.fields import build_extension, build_prime_field, build_tower


@pytest.fixture(scope="session")
def f2():
    return build_prime_field(2)


@pytest.fixture(scope="session")
def f4(f2):
    return build_extension(f2, 2)


@pytest.fixture(scope="session")
def f9():
    return build_tower(3, n=2)


@pytest.fixture(scope="session")
def f16(f2):
    """F_16 as the quadratic extension over F_4 (the q=4 tower)."""
    return build_tower(2, k=2, n=2)


@pytest.fixture(scope="session")
def f25():
    return build_tower(5, n=2)


@pytest.fixture(scope="session")
def f49():
    return build_tower(7, n=2)
