import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from madelung_flow.errors import NumericalError
from madelung_flow.quadrature import adaptive_simpson


def test_cubic_exact():
    r = adaptive_simpson(lambda x: 4 * x**3 - x, 0.0, 2.0)
    assert r.value == pytest.approx(16 - 2, abs=1e-12)


def test_sine():
    r = adaptive_simpson(np.sin, 0.0, math.pi, 1e-11)
    assert abs(r.value - 2) < 1e-10
    assert r.est_error < 1e-10


def test_exponential_tail():
    r = adaptive_simpson(lambda x: np.exp(-x), 0.0, 30.0, 1e-10)
    assert abs(r.value - (1 - math.exp(-30))) < 1e-9


def test_breakpoints_handle_kink():
    r = adaptive_simpson(np.abs, -1.0, 2.0, 1e-12, breakpoints=[0.0])
    assert r.value == pytest.approx(2.5, abs=1e-12)


def test_empty_interval():
    assert adaptive_simpson(np.sin, 1.0, 1.0).value == 0.0
    with pytest.raises(ValueError):
        adaptive_simpson(np.sin, 1.0, 0.0)


def test_non_convergence():
    with pytest.raises(NumericalError):
        adaptive_simpson(lambda x: np.sign(x - 0.3) * 1e3 / np.sqrt(np.abs(x - 0.3) + 1e-300),
                         0.0, 1.0, 1e-14, max_depth=6)


@given(st.floats(0.1, 20))
def test_oscillatory(k):
    r = adaptive_simpson(lambda x: np.cos(k * x), 0.0, 3.0, 1e-10)
    assert abs(r.value - math.sin(3 * k) / k) < 2e-9


def test_aliased_samples_not_accepted():
    # the five coarse Simpson nodes on [0, 3] all sit at cos(16.75 x) ~ 1
    r = adaptive_simpson(lambda x: np.cos(16.75 * x), 0.0, 3.0, 1e-10)
    assert abs(r.value - math.sin(3 * 16.75) / 16.75) < 2e-9
