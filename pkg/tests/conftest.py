import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from corrdyn.states import CorrelationVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _from_weights(w):
    w = np.asarray(w, dtype=float)
    pp, pm, fp, fm = w / w.sum()
    return CorrelationVector((pp - pm) + (fp - fm), (fp - fm) - (pp - pm), (pp + pm) - (fp + fm))


weights = st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=4, max_size=4).filter(lambda w: sum(w) > 1e-3)
valid_states = weights.map(_from_weights)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
