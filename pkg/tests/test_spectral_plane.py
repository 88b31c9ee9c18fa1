import cmath
import math

import numpy as np
import pytest

from Errors import DomainError, PhaseSumError
from SpectralPlane import (CutTopology, PhaseSum, RegionTag, SpectralPoint, SymmetryCase,
                           case_for, classify, involution, k_lambda, normalize_angle,
                           phase_sum, topology_for_case)


def test_phase_sum_classification():
    assert phase_sum(math.pi / 3, -math.pi / 3) is PhaseSum.ZERO
    assert phase_sum(math.pi / 2, math.pi / 2) is PhaseSum.PI
    assert phase_sum(2.0, 2 * math.pi - 2.0) is PhaseSum.ZERO


def test_phase_sum_rejects_other_sums():
    with pytest.raises(PhaseSumError):
        phase_sum(0.3, 0.4)


def test_normalize_angle_range():
    for theta in (-7.0, -math.pi, 0.0, 2 * math.pi, 13.0):
        value = normalize_angle(theta)
        assert 0.0 <= value < 2 * math.pi
        assert cmath.exp(1j * value) == pytest.approx(cmath.exp(1j * theta), abs=1e-12)


@pytest.mark.parametrize('sigma, summ, case, topology', [
    (1, PhaseSum.ZERO, SymmetryCase.SINH_ZERO, CutTopology.REAL_CUT),
    (1, PhaseSum.PI, SymmetryCase.SINH_PI, CutTopology.IMAGINARY_CUT),
    (-1, PhaseSum.PI, SymmetryCase.SINE_PI, CutTopology.REAL_CUT),
    (-1, PhaseSum.ZERO, SymmetryCase.SINE_ZERO, CutTopology.IMAGINARY_CUT),
])
def test_case_table(sigma, summ, case, topology):
    assert case_for(sigma, summ) is case
    assert topology_for_case(sigma, summ) is topology
    assert case.topology is topology
    assert case.sigma == sigma


def test_bad_sigma():
    with pytest.raises(DomainError):
        case_for(0, PhaseSum.ZERO)


def test_k_lambda_examples():
    k, lam = k_lambda(SpectralPoint(2.0, 2.0, CutTopology.REAL_CUT))
    assert k == pytest.approx(2.0)
    assert lam == pytest.approx(0.0)
    k, lam = k_lambda(SpectralPoint(2j, 2.0, CutTopology.REAL_CUT))
    assert k == pytest.approx(0.0)
    assert lam == pytest.approx(2j)
    k, lam = k_lambda(SpectralPoint(2j, 2.0, CutTopology.IMAGINARY_CUT))
    assert k == pytest.approx(2j)
    assert lam == pytest.approx(0.0)


@pytest.mark.parametrize('topology', list(CutTopology))
def test_uniformization_identity(topology):
    rng = np.random.default_rng(7)
    zs = rng.normal(size=20) + 1j * rng.normal(size=20)
    sign = 1.0 if topology is CutTopology.REAL_CUT else -1.0
    for z in zs:
        k, lam = k_lambda(SpectralPoint(z, 1.5, topology))
        assert lam * lam == pytest.approx(k * k - sign * 1.5 ** 2, rel=1e-12, abs=1e-12)
        assert k + lam == pytest.approx(z)


@pytest.mark.parametrize('topology', list(CutTopology))
def test_involution_preserves_k_and_flips_lambda(topology):
    p = SpectralPoint(1.3 + 0.7j, 2.0, topology)
    image = involution(p)
    assert image.k == pytest.approx(p.k)
    assert image.lam == pytest.approx(-p.lam)
    assert involution(image).z == pytest.approx(p.z)


def test_regions():
    assert classify(SpectralPoint(1 + 1j, 2.0, CutTopology.REAL_CUT)) is RegionTag.UPPER_ANALYTIC
    assert classify(SpectralPoint(1 - 1j, 2.0, CutTopology.REAL_CUT)) is RegionTag.LOWER_ANALYTIC
    assert classify(SpectralPoint(3.0, 2.0, CutTopology.REAL_CUT)) is RegionTag.CONTOUR
    # D⁺ for the circle cut: outside the circle above the axis, inside it below
    assert classify(SpectralPoint(4j, 2.0, CutTopology.IMAGINARY_CUT)) is RegionTag.UPPER_ANALYTIC
    assert classify(SpectralPoint(-1j, 2.0, CutTopology.IMAGINARY_CUT)) is RegionTag.UPPER_ANALYTIC
    assert classify(SpectralPoint(1j, 2.0, CutTopology.IMAGINARY_CUT)) is RegionTag.LOWER_ANALYTIC
    assert classify(SpectralPoint(2 * cmath.exp(0.4j), 2.0, CutTopology.IMAGINARY_CUT)) is RegionTag.CONTOUR


def test_zero_excluded():
    with pytest.raises(DomainError):
        SpectralPoint(0.0, 2.0, CutTopology.REAL_CUT)


def test_origin_limit_signs():
    theta = 0.7
    assert SymmetryCase.SINH_ZERO.origin_limit(theta) == pytest.approx(cmath.exp(2j * theta))
    assert SymmetryCase.SINH_PI.origin_limit(theta) == pytest.approx(-cmath.exp(2j * theta))
    assert SymmetryCase.SINE_PI.b_unit == 1.0
    assert SymmetryCase.SINH_ZERO.b_unit == 1j
