"""
SpectralPlane.py
Branch-cut geometries, the uniformization z ↔ (k, λ) and region classification
Last updated: 2026-10-19

TOPOLOGIES:
    RealCut       λ² = k² − q0²   k = (z + q0²/z)/2   λ = (z − q0²/z)/2
                  involution z → q0²/z,  upper region Im z > 0
    ImaginaryCut  λ² = k² + q0²   k = (z − q0²/z)/2   λ = (z + q0²/z)/2
                  involution z → −q0²/z, upper region D⁺ = {(|z|² − q0²)·Im z > 0}

    Both satisfy z = k + λ exactly.  All computation happens in z; the
    two-sheeted square root is never evaluated.

CASES:
    The (σ, θ₊ + θ₋) pair selects one of four symmetry cases:

        case     σ    θ₊+θ₋   topology       discrete b   a(z → 0)
        sinh0   +1    0       RealCut        ±i           +e^{2iθ₊}
        sinhpi  +1    π       ImaginaryCut   ±i           −e^{2iθ₊}
        sinepi  −1    π       RealCut        ±1           −e^{2iθ₊}
        sine0   −1    0       ImaginaryCut   ±1           +e^{2iθ₊}

    RST-NLS Cases 1-4 are sinh0, sinhpi, sinepi, sine0 in that order.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

import Config
from Errors import DomainError, PhaseSumError


# =============================================================================
# ENUMS
# =============================================================================

class CutTopology(Enum):
    REAL_CUT = 'RealCut'
    IMAGINARY_CUT = 'ImaginaryCut'


class RegionTag(Enum):
    UPPER_ANALYTIC = 'UpperAnalytic'
    LOWER_ANALYTIC = 'LowerAnalytic'
    CONTOUR = 'Contour'

    def opposite(self):
        if self is RegionTag.UPPER_ANALYTIC:
            return RegionTag.LOWER_ANALYTIC
        if self is RegionTag.LOWER_ANALYTIC:
            return RegionTag.UPPER_ANALYTIC
        return self


class PhaseSum(Enum):
    ZERO = 0
    PI = 1


class SymmetryCase(Enum):
    SINH_ZERO = 'sinh0'
    SINH_PI = 'sinhpi'
    SINE_PI = 'sinepi'
    SINE_ZERO = 'sine0'

    @property
    def sigma(self):
        return 1 if self in (SymmetryCase.SINH_ZERO, SymmetryCase.SINH_PI) else -1

    @property
    def phase_sum(self):
        if self in (SymmetryCase.SINH_ZERO, SymmetryCase.SINE_ZERO):
            return PhaseSum.ZERO
        return PhaseSum.PI

    @property
    def topology(self):
        return topology_for_case(self.sigma, self.phase_sum)

    @property
    def b_unit(self):
        """Discrete norming constants are ±b_unit: ±i for σ=+1, ±1 for σ=−1."""
        return 1j if self.sigma == 1 else 1.0 + 0j

    def origin_limit(self, theta_plus):
        """Limit of a(z) as z → 0 for reflectionless data."""
        sign = 1.0 if self in (SymmetryCase.SINH_ZERO, SymmetryCase.SINE_ZERO) else -1.0
        return sign * cmath.exp(2j * theta_plus)


# =============================================================================
# CASE SELECTION
# =============================================================================

def normalize_angle(theta):
    """Map an angle into [0, 2π)."""
    value = math.fmod(theta, Config.TWO_PI)
    if value < 0:
        value += Config.TWO_PI
    # fmod can land exactly on 2π after the shift
    if value >= Config.TWO_PI:
        value -= Config.TWO_PI
    return value


def phase_sum(theta_plus, theta_minus, tol=Config.PHASE_TOL):
    """Classify θ₊ + θ₋ (mod 2π) as 0 or π.

    Raises:
        PhaseSumError: the sum is neither 0 nor π within tol

    Examples:
        (π/3, −π/3) → PhaseSum.ZERO
        (π/2, π/2)  → PhaseSum.PI
    """
    total = normalize_angle(theta_plus + theta_minus)
    if min(total, Config.TWO_PI - total) <= tol:
        return PhaseSum.ZERO
    if abs(total - math.pi) <= tol:
        return PhaseSum.PI
    raise PhaseSumError(
        f"θ₊ + θ₋ = {total:.15g} (mod 2π) must be 0 or π: the background "
        f"product q₊(t)q₋(−t) is otherwise complex"
    )


def case_for(sigma, summ):
    """SymmetryCase for a sign σ and a PhaseSum."""
    if sigma not in (1, -1):
        raise DomainError(f"σ must be +1 or −1, got {sigma}")
    if sigma == 1:
        return SymmetryCase.SINH_ZERO if summ is PhaseSum.ZERO else SymmetryCase.SINH_PI
    return SymmetryCase.SINE_ZERO if summ is PhaseSum.ZERO else SymmetryCase.SINE_PI


def topology_for_case(sigma, summ):
    """RealCut for (+1, 0) and (−1, π); ImaginaryCut for (+1, π) and (−1, 0)."""
    if sigma not in (1, -1):
        raise DomainError(f"σ must be +1 or −1, got {sigma}")
    real = (sigma == 1) == (summ is PhaseSum.ZERO)
    return CutTopology.REAL_CUT if real else CutTopology.IMAGINARY_CUT


def topology_for(spec):
    """Cut topology of an equation spec (anything with sigma, theta_plus, theta_minus).

    Raises:
        PhaseSumError: θ₊ + θ₋ ∉ {0, π}
    """
    return topology_for_case(spec.sigma, phase_sum(spec.theta_plus, spec.theta_minus))


# =============================================================================
# UNIFORMIZATION (scalar and numpy array helpers)
# =============================================================================

def _check_nonzero(z):
    if np.any(np.asarray(z) == 0):
        raise DomainError("z = 0 is the image of k = ∞ on the second sheet and is excluded")


def k_of(z, q0, topology):
    _check_nonzero(z)
    if topology is CutTopology.REAL_CUT:
        return 0.5 * (z + q0 * q0 / z)
    return 0.5 * (z - q0 * q0 / z)


def lambda_of(z, q0, topology):
    _check_nonzero(z)
    if topology is CutTopology.REAL_CUT:
        return 0.5 * (z - q0 * q0 / z)
    return 0.5 * (z + q0 * q0 / z)


def involution_z(z, q0, topology):
    """z → q0²/z (RealCut) or z → −q0²/z (ImaginaryCut)."""
    _check_nonzero(z)
    if topology is CutTopology.REAL_CUT:
        return q0 * q0 / z
    return -q0 * q0 / z


def region_of(z, q0, topology, tol=Config.CONTOUR_TOL):
    """RegionTag from the sign of Im λ(z)."""
    lam = lambda_of(complex(z), q0, topology)
    if abs(lam.imag) <= tol * max(1.0, abs(z)):
        return RegionTag.CONTOUR
    return RegionTag.UPPER_ANALYTIC if lam.imag > 0 else RegionTag.LOWER_ANALYTIC


def distance_to_contour(z, q0, topology):
    """Euclidean distance from z to the continuous spectrum Σ."""
    if topology is CutTopology.REAL_CUT:
        return abs(z.imag)
    return min(abs(z.imag), abs(abs(z) - q0))


# =============================================================================
# SPECTRAL POINT
# =============================================================================

@dataclass(frozen=True)
class SpectralPoint:
    """A uniformized spectral value z with its (k, λ) and region."""

    z: complex
    q0: float
    topology: CutTopology

    def __post_init__(self):
        object.__setattr__(self, 'z', complex(self.z))
        if self.z == 0:
            raise DomainError("SpectralPoint z must be nonzero")
        if not self.q0 > 0:
            raise DomainError(f"q0 must be positive, got {self.q0}")

    @property
    def k(self):
        return k_of(self.z, self.q0, self.topology)

    @property
    def lam(self):
        return lambda_of(self.z, self.q0, self.topology)

    def with_z(self, z):
        return SpectralPoint(z, self.q0, self.topology)


def k_lambda(p):
    """Return (k(z), λ(z)) for a SpectralPoint.

    Examples:
        RealCut, z = q0        → (q0, 0)
        RealCut, z = 2i, q0=2  → (0, 2i)
        ImaginaryCut, z = iq0  → (iq0, 0)
    """
    return p.k, p.lam


def classify(p):
    """Region of p: UpperAnalytic (Im λ > 0), LowerAnalytic, or Contour."""
    return region_of(p.z, p.q0, p.topology)


def involution(p):
    """Involution image; k is preserved and λ flips sign."""
    return p.with_z(involution_z(p.z, p.q0, p.topology))
