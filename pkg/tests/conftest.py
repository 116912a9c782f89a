import numpy as np
import pytest

from catrand import _config
from catrand.bipartite import BipartiteState
from catrand.linalg import max_entangled
from catrand.states import DensityOperator


@pytest.fixture(params=["numpy", "numba"])
def kernel_path(request):
    """Run a test once per kernel implementation."""
    if request.param == "numba" and not _config.HAVE_NUMBA:
        pytest.skip("numba not installed")
    saved = _config.USE_NUMBA
    _config.USE_NUMBA = request.param == "numba"
    yield request.param
    _config.USE_NUMBA = saved


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def bip(m, a, b, **kw):
    return BipartiteState(DensityOperator(m), a, b, **kw)


def phi_plus(d=2):
    v = max_entangled(d)
    return np.outer(v, v.conj())
