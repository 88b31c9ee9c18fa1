"""
conftest.py
Shared fixtures for the test suite

The modules live flat at the repository root, so the root is put on
sys.path before any test imports them.
"""

import math
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

import Config  # noqa: E402
import Parallel  # noqa: E402
from ModelConfig import EquationKind, EquationSpec  # noqa: E402

Q0 = Config.FIGURE_Q0
ALPHA = Config.FIGURE_ALPHA
THETA = Config.FIGURE_THETA_PLUS
Q1 = Config.FIGURE_Q1


@pytest.fixture(autouse=True, scope='session')
def _small_pool():
    """Two workers keep the thread pool exercised without oversubscribing CI."""
    Parallel.set_thread_count(2)
    yield
    Parallel.set_thread_count(None)


@pytest.fixture
def sinh0_spec():
    return EquationSpec(EquationKind.SINH_GORDON, 1, Q0, THETA, -THETA, ALPHA)


@pytest.fixture
def sinepi_spec():
    return EquationSpec(EquationKind.SINE_GORDON, -1, Q0, THETA, math.pi - THETA, ALPHA)


@pytest.fixture
def sinhpi_spec():
    return EquationSpec(EquationKind.SINH_GORDON, 1, Q0, math.pi / 2, math.pi / 2, ALPHA)


@pytest.fixture
def sine0_spec():
    return EquationSpec(EquationKind.SINE_GORDON, -1, Q0, 0.0, 0.0, ALPHA)


def nls_spec(sigma, theta_plus, theta_minus):
    from ModelConfig import nls_alpha
    from SpectralPlane import phase_sum
    alpha = nls_alpha(sigma, Q0, phase_sum(theta_plus, theta_minus))
    return EquationSpec(EquationKind.RST_NLS, sigma, Q0, theta_plus, theta_minus, alpha)
