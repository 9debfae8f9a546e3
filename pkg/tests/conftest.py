import math

import pytest

from pqtrig import _accel
from pqtrig.gtrig import ParamPair

MAIN_PAIRS = [(2.0, 2.0), (2.0, 6.0), (1.2, 6.0), (1.2, 2.0)]
GRID_PAIRS = MAIN_PAIRS + [(4.0 / 3.0, 4.0)]


def pair_id(pq):
    return "p={:g},q={:g}".format(*pq)


@pytest.fixture(params=GRID_PAIRS, ids=pair_id)
def grid_pair(request):
    return ParamPair(*request.param)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel build."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_accel, "USE_NUMBA", request.param == "numba")
    return request.param


SQRT3 = math.sqrt(3.0)
K_SQ_26 = (2.0 - SQRT3) / 4.0
