import pytest

from mzqfi.conf import Conf
from mzqfi.states import StateSpec


@pytest.fixture(autouse=True)
def fresh_conf():
    """Every test starts from the default tolerances."""
    Conf().reset()
    yield
    Conf().reset()


@pytest.fixture
def pcs():
    return StateSpec.perelomov(a=1, v=1.0)


@pytest.fixture
def bgcs():
    return StateSpec.barut_girardello(a=1, xi=1.0)


@pytest.fixture
def bgcs_v1():
    """Barut-Girardello state with |ξ| = tanh(1/2), as paired with PCS(1, 1)."""
    return StateSpec.barut_girardello_from_v(a=1, v=1.0)
