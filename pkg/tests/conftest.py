import mpmath
import pytest

from dirichlet_tables.primes import primes_up_to
from dirichlet_tables.specfun import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def oracle_mp():
    """An mpmath context well above working precision, for independent checks."""
    mp = mpmath.mp.clone() if hasattr(mpmath.mp, "clone") else mpmath.ctx_mp.MPContext()
    mp.dps = 90
    return mp


@pytest.fixture(scope="session")
def primes_1e7():
    return primes_up_to(10**7)
