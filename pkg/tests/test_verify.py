import json
import logging
import math

import numpy as np
import pytest

import Config
from conftest import Q1, nls_spec
from ClosedForm import (make_nls_case1, make_nls_case2, make_sinh_bright1_singular,
                        make_sinh_dark1, make_sinh_two)
from Errors import AsymmetricGrid, DomainError
from Verify import (Grid, VerificationReport, _richardson, certify_denominator,
                    certify_singular_lines, check_boundary, check_s_consistency, exclusion_mask,
                    mixed_derivative, residual_nls, s_by_quadrature, s_profile, s_row,
                    second_derivative_x, verify_solution)

COARSE = '-6:6:0.1,-4:4:0.25'


@pytest.fixture
def coarse():
    return Grid.parse(COARSE)


# =============================================================================
# GRID
# =============================================================================

def test_grid_parse():
    grid = Grid.parse('-6:6:0.01,-4:4:0.05')
    assert grid.xs().size == 1201
    assert grid.ts().size == 161
    assert grid.xs()[0] == -6.0
    assert grid.xs()[-1] == pytest.approx(6.0)
    assert grid.symmetric


@pytest.mark.parametrize('text', ['-6:6', '-6:6:0.1', 'a:b:c,1:2:3', ''])
def test_grid_parse_rejects(text):
    with pytest.raises(DomainError):
        Grid.parse(text)


def test_grid_rejects_bad_steps():
    with pytest.raises(DomainError):
        Grid(-1.0, 1.0, -1.0, 1.0, 0.0, 0.1)
    with pytest.raises(DomainError):
        Grid(1.0, -1.0, -1.0, 1.0, 0.1, 0.1)


def test_exclusion_margin_minimum(coarse):
    assert coarse.exclusion_margin == pytest.approx(0.75)
    with pytest.raises(DomainError):
        Grid.parse(COARSE, exclusion_margin=0.5)


def test_asymmetric_grid_rejected():
    spec = nls_spec(1, math.pi / 3, -math.pi / 3)
    with pytest.raises(AsymmetricGrid):
        residual_nls(make_nls_case1(spec), Grid.parse('-6:5:0.1,-4:4:0.25'))


# =============================================================================
# STENCILS
# =============================================================================

def test_stencils_exact_on_polynomials():
    X, T = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 4))
    f = lambda x, t: (x ** 2 * t ** 3).astype(complex)
    assert np.allclose(mixed_derivative(f, X, T, 0.01), 6 * X * T ** 2, atol=1e-6)
    g = lambda x, t: (x ** 4 + t).astype(complex)
    assert np.allclose(second_derivative_x(g, X, T, 0.01), 12 * X ** 2, atol=1e-5)


# =============================================================================
# s QUADRATURE
# =============================================================================

def test_s_row_folds_negative_x(sinh0_spec):
    sol = make_sinh_dark1(sinh0_spec)
    xs = np.array([-1.5, -0.5, 0.5, 1.5])
    row = s_row(sol, xs, 0.7)
    mirrored = s_profile(sol, np.array([1.5, 0.5]), -0.7)
    assert np.allclose(row[:2], mirrored, atol=1e-12)


def test_s_row_matches_closed_form(sinh0_spec):
    sol = make_sinh_dark1(sinh0_spec)
    xs = np.linspace(-3.0, 3.0, 13)
    for t in (-1.0, 0.0, 0.6):
        assert np.max(np.abs(s_row(sol, xs, t) - sol.s(xs, np.full(xs.shape, t)))) < Config.TOL_S_CONSISTENCY


def test_richardson_shortfall_logs_warning(caplog):
    report = VerificationReport('flat residual')
    with caplog.at_level(logging.WARNING, logger='Verify'):
        _richardson(report, 1e-3, 1e-3, 0.0)
    assert report.get('richardson') == pytest.approx(1.0)
    assert not report.verdict
    assert any('h → h/2' in r.getMessage() for r in caplog.records)


@pytest.mark.parametrize('x, t', [(-1.0, 0.3), (0.5, -0.7), (2.0, 1.0)])
def test_s_by_quadrature_matches_closed_form(sinh0_spec, x, t):
    sol = make_sinh_dark1(sinh0_spec)
    assert abs(s_by_quadrature(sol, x, t) - complex(sol.s(x, t))) < Config.TOL_S_CONSISTENCY


def test_s_consistency_includes_spot_checks(sinh0_spec, coarse):
    report = check_s_consistency(make_sinh_dark1(sinh0_spec), coarse)
    assert report.get('s_spot_quadrature') is not None
    assert report.verdict, report.table()


# =============================================================================
# CERTIFICATION
# =============================================================================

def test_singular_line_found(sinh0_spec, coarse):
    sol = make_sinh_bright1_singular(sinh0_spec)
    report = certify_singular_lines(sol, coarse)
    assert report.verdict
    assert report.singular_line_agreement <= coarse.cell


def test_exclusion_mask_drops_line(sinh0_spec, coarse):
    sol = make_sinh_bright1_singular(sinh0_spec)
    X, T = coarse.mesh()
    mask = exclusion_mask(sol, X, T, coarse.exclusion_margin)
    assert not mask.all()
    assert mask.any()


def test_two_soliton_denominator_floor(sinhpi_spec, coarse):
    sol = make_sinh_two(sinhpi_spec, (1, -1), Q1)
    assert certify_denominator(sol, coarse).verdict


def test_boundary_check(sinh0_spec, coarse):
    assert check_boundary(make_sinh_dark1(sinh0_spec), coarse).verdict


@pytest.mark.slow
@pytest.mark.parametrize('build', [
    lambda s: make_sinh_dark1(s['sinh0']),
    lambda s: make_sinh_bright1_singular(s['sinh0']),
    lambda s: make_sinh_two(s['sinhpi'], (1, -1), Q1),
    lambda s: make_nls_case1(nls_spec(1, math.pi / 3, -math.pi / 3)),
    lambda s: make_nls_case2(nls_spec(1, math.pi / 2, math.pi / 2), (1, -1), Q1),
], ids=['sinh-dark1', 'sinh-bright1-singular', 'sinh-two', 'nls-case1', 'nls-case2-two'])
def test_verify_passes(build, sinh0_spec, sinhpi_spec, coarse):
    report = verify_solution(build({'sinh0': sinh0_spec, 'sinhpi': sinhpi_spec}), coarse)
    assert report.verdict, report.table()


# =============================================================================
# REPORT
# =============================================================================

def test_report_verdict_and_json():
    report = VerificationReport('demo')
    report.add('residual_sup', 1e-8, 1e-6)
    report.add('boundary_defect', 3e-3, 1e-6)
    assert not report.verdict
    assert report.residual_sup == 1e-8
    doc = json.loads(report.to_json())
    assert doc['verdict'] == 'fail'
    assert [c['name'] for c in doc['checks']] == ['residual_sup', 'boundary_defect']
    assert 'verdict: fail' in report.table()
    assert list(report.to_frame()['passed']) == [True, False]


def test_report_nan_fails():
    report = VerificationReport('nan').add('residual_sup', float('nan'), 1.0)
    assert not report.verdict
