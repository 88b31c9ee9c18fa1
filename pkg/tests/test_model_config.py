import json
import math

import pytest

from conftest import Q0, THETA, nls_spec
from Errors import AlphaMismatch, DomainError, KindSignMismatch, PhaseSumError
from ModelConfig import (EquationKind, EquationSpec, asymptotic_matrices, background,
                         boundary_partner, load_spec, nls_alpha, spec_from_mapping,
                         spec_to_dict, validate)
from SpectralPlane import PhaseSum, SymmetryCase


def test_validate_accepts_figure_nls_spec():
    spec = EquationSpec(EquationKind.RST_NLS, 1, 2.0, math.pi / 3, -math.pi / 3, 8.0)
    validate(spec)
    assert spec.case is SymmetryCase.SINH_ZERO


def test_kind_sign_mismatch():
    with pytest.raises(KindSignMismatch):
        validate(EquationSpec(EquationKind.SINH_GORDON, -1, Q0, THETA, -THETA, 1.0))
    with pytest.raises(KindSignMismatch):
        validate(EquationSpec(EquationKind.SINE_GORDON, 1, Q0, THETA, -THETA, 1.0))


def test_alpha_mismatch():
    with pytest.raises(AlphaMismatch):
        validate(EquationSpec(EquationKind.RST_NLS, 1, Q0, THETA, -THETA, 1.0))


def test_phase_sum_error():
    with pytest.raises(PhaseSumError):
        validate(EquationSpec(EquationKind.SINH_GORDON, 1, Q0, 0.2, 0.3, 1.0))


def test_nonpositive_q0():
    with pytest.raises(DomainError):
        validate(EquationSpec(EquationKind.SINH_GORDON, 1, 0.0, THETA, -THETA, 1.0))


@pytest.mark.parametrize('sigma, summ, expected', [
    (1, PhaseSum.ZERO, 8.0),
    (1, PhaseSum.PI, -8.0),
    (-1, PhaseSum.ZERO, -8.0),
    (-1, PhaseSum.PI, 8.0),
])
def test_nls_alpha_law(sigma, summ, expected):
    assert nls_alpha(sigma, 2.0, summ) == pytest.approx(expected)


def test_nls_alpha_with_beta():
    assert nls_alpha(1, 2.0, PhaseSum.ZERO, beta=0.5) == pytest.approx(8.25)


def test_background_and_partner(sinh0_spec):
    assert complex(background(sinh0_spec, '+', 0.0)) == pytest.approx(2.0 * complex(math.cos(THETA), math.sin(THETA)))
    assert complex(background(sinh0_spec, '-', 0.0)) == pytest.approx(2.0 * complex(math.cos(THETA), -math.sin(THETA)))
    # r(x→+∞, t) = σ q(−∞, −t)
    t = 0.37
    assert complex(boundary_partner(sinh0_spec, '+', t)) == pytest.approx(
        sinh0_spec.sigma * complex(background(sinh0_spec, '-', -t)))


@pytest.mark.parametrize('sigma, theta_minus', [(1, -THETA), (1, math.pi - THETA),
                                                (-1, -THETA), (-1, math.pi - THETA)])
def test_product_condition(sigma, theta_minus):
    spec = nls_spec(sigma, THETA, theta_minus)
    mats = asymptotic_matrices(spec)
    for t in (-1.0, 0.0, 0.8):
        assert mats.product_defect(t) < 1e-12
    assert abs(mats.product_constant().imag) < 1e-12


def test_spec_from_mapping_defaults_sigma():
    spec = spec_from_mapping({'kind': 'sine-gordon', 'q0': 2, 'theta_plus': 0.5,
                              'theta_minus': math.pi - 0.5, 'alpha': 1})
    assert spec.sigma == -1
    assert spec.beta == 0.0


def test_spec_from_mapping_rejects_unknown_keys():
    with pytest.raises(DomainError):
        spec_from_mapping({'kind': 'sinh', 'q0': 2, 'theta_plus': 0, 'theta_minus': 0,
                           'alpha': 1, 'gamma': 3})


def test_nls_mapping_needs_sigma():
    with pytest.raises(DomainError):
        spec_from_mapping({'kind': 'nls', 'q0': 2, 'theta_plus': 0, 'theta_minus': 0, 'alpha': 8})


def test_load_spec_key_value(tmp_path):
    path = tmp_path / 'sinh.cfg'
    path.write_text('# figure parameters\nkind = sinh-gordon\nq0 = 2\n'
                    f'theta_plus = {THETA!r}\ntheta_minus = {-THETA!r}\nalpha = 1\n')
    spec = load_spec(str(path))
    assert spec.kind is EquationKind.SINH_GORDON
    assert spec.q0 == 2.0
    assert spec.case is SymmetryCase.SINH_ZERO


def test_load_spec_json_round_trip(tmp_path, sinepi_spec):
    path = tmp_path / 'sine.json'
    path.write_text(json.dumps(spec_to_dict(sinepi_spec)))
    assert load_spec(str(path)) == sinepi_spec


def test_load_spec_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_spec(str(tmp_path / 'nope.cfg'))
