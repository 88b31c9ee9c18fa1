import cmath
import logging
import math
from dataclasses import replace

import numpy as np
import pytest

import Config
from conftest import ALPHA, Q0, Q1, THETA, nls_spec
from ClosedForm import (Family, make_nls_case1, make_nls_case2, make_nls_case3, make_nls_case4,
                        make_sine_dark1, make_sine_two, make_sinh_bright1_singular,
                        make_sinh_dark1, make_sinh_two)
from Errors import DomainError, NotReflectionless, SingularPoint
from InverseReflectionless import (as_field_solution, assemble, detect_singular_points,
                                   determinant_grid, eigenfunction_values, reconstruct_grid,
                                   recover_q, recover_q_array, recover_q_large_z, recover_s)
from ScatteringData import ReflectionSample, from_eigenvalues
from SpectralPlane import SymmetryCase
from Verify import Grid

XS = np.linspace(-6.0, 6.0, 97)
TS = (-2.0, 0.0, 0.9)


def _pair():
    return [1j * Q1, -1j * Q0 * Q0 / Q1]


def _one(case, theta, delta):
    z = Q0 * cmath.exp(1j * theta)
    if case is SymmetryCase.SINE_PI:
        z *= 1j
    return from_eigenvalues(case, Q0, theta, [z], [delta])


def _sup_deviation(data, spec, sol):
    worst = 0.0
    for t in TS:
        values, singular = recover_q_array(data, spec, XS, t)
        keep = ~singular
        exact = sol.q(XS, np.full(XS.shape, t))
        worst = max(worst, float(np.max(np.abs(values[keep] - exact[keep]))))
    return worst


# =============================================================================
# ONE-SOLITONS
# =============================================================================

def test_sinh_dark_reconstruction(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    assert _sup_deviation(data, sinh0_spec, make_sinh_dark1(sinh0_spec)) < 1e-10


def test_sine_dark_reconstruction(sinepi_spec):
    data = _one(SymmetryCase.SINE_PI, THETA, -1)
    assert _sup_deviation(data, sinepi_spec, make_sine_dark1(sinepi_spec)) < 1e-10


def test_nls_case1_reconstruction():
    spec = nls_spec(1, THETA, -THETA)
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    assert _sup_deviation(data, spec, make_nls_case1(spec)) < 1e-10


def test_nls_case3_reconstruction():
    spec = nls_spec(-1, THETA, math.pi - THETA)
    data = _one(SymmetryCase.SINE_PI, THETA, -1)
    assert _sup_deviation(data, spec, make_nls_case3(spec)) < 1e-10


def test_removable_point_on_centre_line(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    # the closing determinant vanishes at the soliton centre, q does not
    assert abs(complex(determinant_grid(data, sinh0_spec, [0.0], [0.0])[0, 0])) < 1e-10
    assert abs(recover_q(data, sinh0_spec, 0.0, 0.0) - 1.0) < 1e-10


def test_removable_point_logs_warning(sinh0_spec, caplog):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    with caplog.at_level(logging.WARNING, logger='InverseReflectionless'):
        values, singular = recover_q_array(data, sinh0_spec, [0.0], 0.0)
    assert not singular[0]
    assert any('circle means' in r.getMessage() for r in caplog.records)


def test_singular_point_raises(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, -1)
    with pytest.raises(SingularPoint):
        recover_q(data, sinh0_spec, 0.0, 0.0)


def test_singular_family_off_line(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, -1)
    sol = make_sinh_bright1_singular(sinh0_spec)
    for x, t in [(1.0, 0.0), (-0.7, 1.1)]:
        assert abs(recover_q(data, sinh0_spec, x, t) - complex(sol.q(x, t))) < 1e-10


def test_detect_singular_points_on_line(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, -1)
    points = detect_singular_points(data, sinh0_spec, np.array([-0.5, 0.0, 0.5]), np.array([0.0]))
    assert points == [(0.0, 0.0)]


# =============================================================================
# TWO-SOLITONS
# =============================================================================

@pytest.mark.parametrize('deltas', [(1, -1), (-1, 1)])
def test_sinh_two_reconstruction(sinhpi_spec, deltas):
    data = from_eigenvalues(SymmetryCase.SINH_PI, Q0, math.pi / 2, _pair(), deltas)
    assert _sup_deviation(data, sinhpi_spec, make_sinh_two(sinhpi_spec, deltas, Q1)) < 1e-8


def test_sine_two_reconstruction(sine0_spec):
    data = from_eigenvalues(SymmetryCase.SINE_ZERO, Q0, 0.0, _pair(), (1, -1))
    assert _sup_deviation(data, sine0_spec, make_sine_two(sine0_spec, (1, -1), Q1)) < 1e-8


def test_nls_case2_reconstruction():
    spec = nls_spec(1, math.pi / 2, math.pi / 2)
    data = from_eigenvalues(SymmetryCase.SINH_PI, Q0, math.pi / 2, _pair(), (1, -1))
    assert _sup_deviation(data, spec, make_nls_case2(spec, (1, -1), Q1)) < 1e-8


def test_nls_case4_reconstruction():
    spec = nls_spec(-1, 0.0, 0.0)
    data = from_eigenvalues(SymmetryCase.SINE_ZERO, Q0, 0.0, _pair(), (1, -1))
    assert _sup_deviation(data, spec, make_nls_case4(spec, (1, -1), Q1)) < 1e-8


# =============================================================================
# CROSS-CHECKS
# =============================================================================

def test_large_z_route_agrees(sinhpi_spec):
    data = from_eigenvalues(SymmetryCase.SINH_PI, Q0, math.pi / 2, _pair(), (1, -1))
    xs = np.array([-2.0, -0.3, 0.8, 2.5])
    direct, _ = recover_q_array(data, sinhpi_spec, xs, 0.4)
    assert np.allclose(recover_q_large_z(data, sinhpi_spec, xs, 0.4), direct, atol=1e-10)


def test_eigenfunction_satisfies_x_equation(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    z = data.eigenvalues[0]
    x, h, t = 0.6, 1e-5, 0.3
    n1, _ = eigenfunction_values(data, sinh0_spec, [x - h, x + h], t)
    d_n1 = (n1[1, 0] - n1[0, 0]) / (2 * h)
    n1_mid, n2_mid = eigenfunction_values(data, sinh0_spec, [x], t)
    q = recover_q(data, sinh0_spec, x, t)
    assert abs(d_n1 - (-1j * z * n1_mid[0, 0] + q * n2_mid[0, 0])) < 1e-6


def test_eigenfunction_shapes(sinhpi_spec):
    data = from_eigenvalues(SymmetryCase.SINH_PI, Q0, math.pi / 2, _pair(), (1, -1))
    n1, n2 = eigenfunction_values(data, sinhpi_spec, XS, 0.0)
    assert n1.shape == n2.shape == (XS.size, 2)
    assert np.all(np.isfinite(n1))


def test_no_eigenvalues_gives_background(sinh0_spec):
    data = from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [], [])
    assert recover_q(data, sinh0_spec, 1.3, 0.5) == pytest.approx(Q0 * cmath.exp(1j * (ALPHA * 0.5 + THETA)))


def test_grid_shapes(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    q, mask = reconstruct_grid(data, sinh0_spec, XS, TS)
    assert q.shape == (len(TS), XS.size)
    assert mask.shape == q.shape
    assert not mask.any()


def test_recover_s_matches_closed_form(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    grid = Grid.parse('-2:2:0.5,-1:1:0.5')
    s = recover_s(data, sinh0_spec, grid)
    X, T = grid.mesh()
    exact = make_sinh_dark1(sinh0_spec).s(X, T)
    assert np.max(np.abs(s - exact)) < 10 * Config.TOL_S_CONSISTENCY


def test_field_solution_wrapper(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    sol = as_field_solution(data, sinh0_spec)
    assert sol.id.family is Family.SINH_DARK1
    X, T = np.meshgrid([-1.0, 0.5], [0.0, 0.3])
    assert np.allclose(sol.q(X, T), make_sinh_dark1(sinh0_spec).q(X, T), atol=1e-10)


def test_field_solution_labels_singular_family(sinh0_spec, sinepi_spec):
    sinh = as_field_solution(_one(SymmetryCase.SINH_ZERO, THETA, -1), sinh0_spec)
    assert sinh.id.family is Family.SINH_BRIGHT1_SINGULAR
    sine = as_field_solution(_one(SymmetryCase.SINE_PI, THETA, 1), sinepi_spec)
    assert sine.id.family is Family.SINE_BRIGHT1_SINGULAR
    dark = as_field_solution(_one(SymmetryCase.SINE_PI, THETA, -1), sinepi_spec)
    assert dark.id.family is Family.SINE_DARK1


def test_field_solution_labels_nls_singular_family():
    spec = nls_spec(1, THETA, -THETA)
    sol = as_field_solution(_one(SymmetryCase.SINH_ZERO, THETA, -1), spec)
    assert sol.id.family is Family.NLS_CASE1_SINGULAR


# =============================================================================
# ERRORS
# =============================================================================

def test_reflection_rejected(sinh0_spec):
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    noisy = replace(data, reflection=ReflectionSample(np.array([3.0, 4.0]), np.array([0.1, 0.1])))
    with pytest.raises(NotReflectionless):
        assemble(noisy, sinh0_spec, 0.0, 0.0)


def test_recover_s_needs_gordon():
    spec = nls_spec(1, THETA, -THETA)
    data = _one(SymmetryCase.SINH_ZERO, THETA, 1)
    with pytest.raises(DomainError):
        recover_s(data, spec, Grid.parse('-1:1:0.5,-1:1:0.5'))
