import pytest
from hypothesis import settings

from core.coeffs import LocalizedField, PrimeField

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def symbolic_field():
    return LocalizedField()


@pytest.fixture
def numeric_field():
    """Exact field at zeta = (0, 1, 2, 3, 4)"""
    return LocalizedField(zeta=(0, 1, 2, 3, 4))


@pytest.fixture
def prime_field():
    return PrimeField((0, 1, 2, 3, 4), lam=3, mu=5)
