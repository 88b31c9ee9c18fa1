import cmath
import math

import numpy as np
import pytest

from conftest import ALPHA, Q0, Q1, THETA, nls_spec
from Errors import (ConstraintViolated, DomainError, ImproperEigenvalue, KPole,
                    MissingDerivative, RepeatedZero)
from ModelConfig import EquationKind, EquationSpec
from ScatteringData import (DiscreteEigen, ScatteringData, a_at_origin, a_bar_prime, a_prime,
                            check_discrete_symmetry, data_from_dict, data_to_dict, evolution_exponent,
                            evolve, from_eigenvalues, gordon_exponent_general, load_data,
                            require_derivatives, save_data, trace_a, trace_a_bar,
                            validate_constraint)
from SpectralPlane import SpectralPoint, SymmetryCase


def _two_pair():
    return [1j * Q1, -1j * Q0 * Q0 / Q1]


@pytest.fixture
def sinh0_data():
    return from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [Q0 * cmath.exp(1j * THETA)], [1])


@pytest.fixture
def sinhpi_data():
    return from_eigenvalues(SymmetryCase.SINH_PI, Q0, math.pi / 2, _two_pair(), [1, -1])


# =============================================================================
# CONSTRUCTION AND SYMMETRY
# =============================================================================

def test_norming_constants_sinh(sinh0_data):
    d = sinh0_data.discrete[0]
    assert d.b == pytest.approx(1j)
    assert d.b_bar == pytest.approx(-1j)
    assert d.z_bar == pytest.approx(Q0 * cmath.exp(-1j * THETA))
    assert check_discrete_symmetry(sinh0_data) < 1e-12


def test_norming_constants_sine():
    data = from_eigenvalues(SymmetryCase.SINE_PI, Q0, THETA, [1j * Q0 * cmath.exp(1j * THETA)], [-1])
    d = data.discrete[0]
    assert d.b == pytest.approx(-1.0)
    assert d.b_bar == pytest.approx(-1.0)
    assert abs(d.b ** 2 - 1) < 1e-12


def test_delta_count_mismatch():
    with pytest.raises(DomainError):
        from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [2j], [1, 1])


# =============================================================================
# TRACE FORMULA
# =============================================================================

def test_a_prime_one_soliton_closed_form(sinh0_data):
    expected = 1.0 / (Q0 * (cmath.exp(1j * THETA) - cmath.exp(-1j * THETA)))
    assert abs(sinh0_data.discrete[0].a_prime - expected) < 1e-12


def test_a_prime_two_soliton_closed_form(sinhpi_data):
    expected = -1j * (Q1 ** 2 + Q0 ** 2) / (2 * Q1 * (Q1 ** 2 - Q0 ** 2))
    assert abs(a_prime(sinhpi_data, 0) - expected) < 1e-12


@pytest.mark.parametrize('fixture', ['sinh0_data', 'sinhpi_data'])
def test_a_prime_matches_difference_quotient(fixture, request):
    data = request.getfixturevalue(fixture)
    h = 1e-3
    for j, d in enumerate(data.discrete):
        def a(z):
            return trace_a(data, SpectralPoint(z, data.q0, data.topology))
        numeric = (a(d.z - 2 * h) - 8 * a(d.z - h) + 8 * a(d.z + h) - a(d.z + 2 * h)) / (12 * h)
        assert abs(numeric - d.a_prime) < 1e-9 * max(1.0, abs(d.a_prime))


def test_a_bar_prime_matches_difference_quotient(sinh0_data):
    d = sinh0_data.discrete[0]
    h = 1e-3

    def a_bar(z):
        return trace_a_bar(sinh0_data, SpectralPoint(z, Q0, sinh0_data.topology))
    numeric = (a_bar(d.z_bar - 2 * h) - 8 * a_bar(d.z_bar - h)
               + 8 * a_bar(d.z_bar + h) - a_bar(d.z_bar + 2 * h)) / (12 * h)
    assert abs(numeric - a_bar_prime(sinh0_data, 0)) < 1e-9


def test_trace_limits(sinh0_data):
    far = trace_a(sinh0_data, SpectralPoint(1e8j, Q0, sinh0_data.topology))
    assert abs(far - 1.0) < 1e-6
    assert a_at_origin(sinh0_data) == pytest.approx(SymmetryCase.SINH_ZERO.origin_limit(THETA))


def test_trace_a_rejects_lower_region(sinh0_data):
    with pytest.raises(DomainError):
        trace_a(sinh0_data, SpectralPoint(1 - 1j, Q0, sinh0_data.topology))


def test_repeated_zero():
    z = Q0 * cmath.exp(1j * THETA)
    with pytest.raises(RepeatedZero):
        from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [z, z], [1, 1])


# =============================================================================
# CONSTRAINTS
# =============================================================================

@pytest.mark.parametrize('case, theta, zs', [
    (SymmetryCase.SINH_ZERO, THETA, [Q0 * cmath.exp(1j * THETA)]),
    (SymmetryCase.SINE_PI, THETA, [1j * Q0 * cmath.exp(1j * THETA)]),
    (SymmetryCase.SINH_PI, math.pi / 2, _two_pair()),
    (SymmetryCase.SINE_ZERO, 0.0, _two_pair()),
])
def test_listed_eigenvalue_sets_satisfy_constraint(case, theta, zs):
    data = from_eigenvalues(case, Q0, theta, zs, [1] * len(zs))
    report = validate_constraint(data)
    assert report.relative_defect < 1e-10
    assert report.sign in (1, -1)


@pytest.mark.parametrize('case', [SymmetryCase.SINH_PI, SymmetryCase.SINE_ZERO])
def test_single_eigenvalue_rejected_on_circle_cut(case):
    data = from_eigenvalues(case, Q0, 0.0, [3j], [1])
    with pytest.raises(ImproperEigenvalue):
        validate_constraint(data)


def test_constraint_violation():
    data = from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [1.5 * cmath.exp(0.8j)], [1])
    with pytest.raises(ConstraintViolated):
        validate_constraint(data)


def test_missing_derivatives():
    d = DiscreteEigen(2j, 2j, 1j, -1j)
    with pytest.raises(MissingDerivative):
        require_derivatives(ScatteringData(SymmetryCase.SINH_ZERO, Q0, 0.5, (d,)))


# =============================================================================
# TIME EVOLUTION
# =============================================================================

def test_gordon_fast_path_matches_general_law(sinh0_spec, sinhpi_spec):
    for spec in (sinh0_spec, sinhpi_spec):
        for z in (1.3 + 0.4j, -0.7 + 2.1j, 3j):
            assert abs(evolution_exponent(spec, z) - gordon_exponent_general(spec, z)) < 1e-12


def test_sinh0_evolved_norming_constant(sinh0_data, sinh0_spec):
    t = 1.7
    moved = evolve(sinh0_data, t, sinh0_spec)
    expected = 1j * cmath.exp(-(1j * ALPHA * t / math.cos(THETA)) * cmath.exp(-1j * THETA))
    assert abs(moved.discrete[0].b - expected) < 1e-12
    assert moved.time == t
    assert evolve(moved, t, sinh0_spec) is moved


def test_nls_exponent_reduces_at_zero_beta():
    spec = nls_spec(1, THETA, -THETA)
    z = 1.1 + 0.9j
    k = 0.5 * (z + Q0 ** 2 / z)
    lam = 0.5 * (z - Q0 ** 2 / z)
    expected = -2j * (Q0 ** 2 + 2 * lam * k)
    assert abs(evolution_exponent(spec, z) - expected) < 1e-12


def test_gordon_k_pole(sinh0_spec):
    with pytest.raises(KPole):
        evolution_exponent(sinh0_spec, 1j * Q0)


def test_evolve_case_mismatch(sinh0_data, sinepi_spec):
    with pytest.raises(DomainError):
        evolve(sinh0_data, 1.0, sinepi_spec)


# =============================================================================
# SERIALIZATION
# =============================================================================

def test_json_round_trip(tmp_path, sinhpi_data):
    path = tmp_path / 'data.json'
    save_data(sinhpi_data, str(path))
    loaded = load_data(str(path))
    assert loaded.case is sinhpi_data.case
    assert np.allclose(loaded.eigenvalues, sinhpi_data.eigenvalues)
    for a, b in zip(loaded.discrete, sinhpi_data.discrete):
        assert a.b == b.b
        assert a.a_prime == b.a_prime


def test_from_dict_recomputes_derivatives(sinh0_data):
    obj = data_to_dict(sinh0_data)
    obj.pop('a_prime')
    obj.pop('a_bar_prime')
    rebuilt = data_from_dict(obj)
    assert abs(rebuilt.discrete[0].a_prime - sinh0_data.discrete[0].a_prime) < 1e-14


def test_malformed_dict():
    with pytest.raises(DomainError):
        data_from_dict({'case': 'sinh0'})
