import math

import numpy as np
import pytest
from hypothesis import strategies as st

from orthospeed.states import make_state

R2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def bell():
    return make_state(R2, 0, 0, R2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_coord = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def states(draw):
    xs = draw(st.lists(_coord, min_size=8, max_size=8))
    amps = [complex(xs[2 * k], xs[2 * k + 1]) for k in range(4)]
    if sum(abs(a) ** 2 for a in amps) < 1e-6:
        amps[0] += 1.0
    return make_state(*amps, normalize=True)
