"""
ModelConfig.py
Equation parameters, background boundary data and asymptotic matrices
Last updated: 2026-10-19

EQUATIONS:
    SinhGordon   σ = +1   q_xt + 2 s q = 0,  s = σ ∫_x^∞ ∂t(q(x',t) q(−x',−t)) dx'
    SineGordon   σ = −1   (same, opposite σ)
    RstNls       σ = ±1   i q_t = q_xx − 2σ q²(x,t) q(−x,−t)

BOUNDARY DATA:
    q(x,t) → q± = q0 e^{i(αt + θ±)}            as x → ±∞
    r(x,t) = σ q(−x,−t) → σ q0 e^{i(θ∓ − αt)}  as x → ±∞

    The product q₊(t) q₋(−t) = q0² e^{i(θ₊+θ₋)} must be real, so
    θ₊ + θ₋ ∈ {0, π}.  For RST-NLS, substituting the background into the
    equation forces α = ±2σq0² + β² (+ for sum 0, − for sum π).

CONFIG FILES:
    Flat key = value text (# comments allowed) or a JSON object, keys:
        kind, sigma, q0, theta_plus, theta_minus, alpha, beta
    kind accepts sinh-gordon / sine-gordon / rst-nls (case and _ ignored).
"""

import cmath
import json
import math
import os
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

import Config
from Errors import AlphaMismatch, DomainError, KindSignMismatch
from SpectralPlane import PhaseSum, case_for, normalize_angle, phase_sum, topology_for_case


# =============================================================================
# EQUATION SPEC
# =============================================================================

class EquationKind(Enum):
    SINH_GORDON = 'sinh-gordon'
    SINE_GORDON = 'sine-gordon'
    RST_NLS = 'rst-nls'

    @property
    def is_gordon(self):
        return self is not EquationKind.RST_NLS

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower().replace('_', '-').replace(' ', '-')
        aliases = {
            'sinhgordon': cls.SINH_GORDON, 'sinh-gordon': cls.SINH_GORDON, 'sinh': cls.SINH_GORDON,
            'sinegordon': cls.SINE_GORDON, 'sine-gordon': cls.SINE_GORDON, 'sine': cls.SINE_GORDON,
            'rstnls': cls.RST_NLS, 'rst-nls': cls.RST_NLS, 'nls': cls.RST_NLS,
        }
        if key not in aliases:
            raise DomainError(
                f"Unknown equation kind {text!r}.  "
                f"Use one of: sinh-gordon, sine-gordon, rst-nls"
            )
        return aliases[key]


@dataclass(frozen=True)
class EquationSpec:
    """Which equation, its sign and its background.

    θ± are stored normalized into [0, 2π).
    """

    kind: EquationKind
    sigma: int
    q0: float
    theta_plus: float
    theta_minus: float
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'sigma', int(self.sigma))
        object.__setattr__(self, 'q0', float(self.q0))
        object.__setattr__(self, 'theta_plus', normalize_angle(float(self.theta_plus)))
        object.__setattr__(self, 'theta_minus', normalize_angle(float(self.theta_minus)))
        object.__setattr__(self, 'alpha', float(self.alpha))
        object.__setattr__(self, 'beta', float(self.beta))

    # ------------------------------------------------------------------
    # DERIVED
    # ------------------------------------------------------------------

    @property
    def is_gordon(self):
        return self.kind.is_gordon

    @property
    def phase_sum(self):
        return phase_sum(self.theta_plus, self.theta_minus)

    @property
    def case(self):
        return case_for(self.sigma, self.phase_sum)

    @property
    def topology(self):
        return topology_for_case(self.sigma, self.phase_sum)

    def with_phase(self, theta_plus):
        """Same spec with θ₊ replaced and θ₋ moved to keep the phase sum."""
        offset = 0.0 if self.phase_sum is PhaseSum.ZERO else math.pi
        return replace(self, theta_plus=theta_plus, theta_minus=offset - theta_plus)


def nls_alpha(sigma, q0, summ, beta=0.0):
    """Background frequency forced on RST-NLS: ±2σq0² + β²."""
    sign = 1.0 if summ is PhaseSum.ZERO else -1.0
    return sign * 2.0 * sigma * q0 * q0 + beta * beta


def validate(spec):
    """Check every EquationSpec invariant.  Returns None, raises on failure.

    Raises:
        KindSignMismatch: sinh-Gordon with σ ≠ +1 or sine-Gordon with σ ≠ −1
        PhaseSumError: θ₊ + θ₋ ∉ {0, π}
        AlphaMismatch: RST-NLS α inconsistent with σ, q0, phase sum (and β)
        DomainError: q0 ≤ 0, σ ∉ {±1}, non-finite parameters

    Examples:
        (RstNls, σ=1, q0=2, θ₊=π/3, θ₋=−π/3, α=8) → ok
        (SinhGordon, σ=−1, ...)                   → KindSignMismatch
    """
    if spec.sigma not in (1, -1):
        raise DomainError(f"σ must be +1 or −1, got {spec.sigma}")
    for name in ('q0', 'theta_plus', 'theta_minus', 'alpha', 'beta'):
        if not math.isfinite(getattr(spec, name)):
            raise DomainError(f"{name} must be finite, got {getattr(spec, name)}")
    if not spec.q0 > 0:
        raise DomainError(f"q0 must be positive, got {spec.q0}")
    if spec.kind is EquationKind.SINH_GORDON and spec.sigma != 1:
        raise KindSignMismatch(f"sinh-Gordon requires σ = +1, got σ = {spec.sigma}")
    if spec.kind is EquationKind.SINE_GORDON and spec.sigma != -1:
        raise KindSignMismatch(f"sine-Gordon requires σ = −1, got σ = {spec.sigma}")

    summ = spec.phase_sum   # raises PhaseSumError

    if spec.kind is EquationKind.RST_NLS:
        # C0 = q0² e^{i(θ₊+θ₋)} is real once the phase sum is 0 or π
        expected = nls_alpha(spec.sigma, spec.q0, summ, spec.beta)
        if abs(spec.alpha - expected) > Config.PHASE_TOL * max(1.0, abs(expected)):
            raise AlphaMismatch(
                f"RST-NLS with σ={spec.sigma}, q0={spec.q0}, phase sum "
                f"{'0' if summ is PhaseSum.ZERO else 'π'} needs α = {expected:.15g}, "
                f"got α = {spec.alpha:.15g}"
            )


# =============================================================================
# BACKGROUND AND ASYMPTOTIC MATRICES
# =============================================================================

def _side_sign(side):
    if side in ('+', '+1', 1, '+inf', 'plus'):
        return 1
    if side in ('-', '-1', -1, '-inf', 'minus'):
        return -1
    raise DomainError(f"side must be '+' or '-', got {side!r}")


def background(spec, side, t):
    """q0 e^{i(αt + θ_side)}.  The e^{iβx} factor is applied by callers.

    Examples:
        (q0=2, α=1, θ₊=π/3), side '+', t=0 → 2e^{iπ/3}
        side '-', t=0, θ₋=−π/3               → 2e^{−iπ/3}
    """
    theta = spec.theta_plus if _side_sign(side) == 1 else spec.theta_minus
    return spec.q0 * np.exp(1j * (spec.alpha * np.asarray(t) + theta))


def boundary_partner(spec, side, t):
    """Limit of r(x,t) = σ q(−x,−t) as x → ±∞: σ q0 e^{i(θ∓ − αt)}."""
    theta = spec.theta_minus if _side_sign(side) == 1 else spec.theta_plus
    return spec.sigma * spec.q0 * np.exp(1j * (theta - spec.alpha * np.asarray(t)))


@dataclass(frozen=True)
class AsymptoticMatrices:
    """Q±(t) and J = diag(−1, 1) of the scattering problem v_x = (ikJ + Q)v."""

    spec: EquationSpec

    J = np.diag([-1.0 + 0j, 1.0 + 0j])

    def q_matrix(self, side, t):
        upper = complex(background(self.spec, side, t))
        lower = complex(boundary_partner(self.spec, side, t))
        return np.array([[0.0, upper], [lower, 0.0]], dtype=complex)

    def Q_plus(self, t):
        return self.q_matrix('+', t)

    def Q_minus(self, t):
        return self.q_matrix('-', t)

    def product_constant(self):
        """σ q0² e^{i(θ₊+θ₋)} ∈ {±σq0²}."""
        return self.spec.sigma * self.spec.q0 ** 2 * cmath.exp(
            1j * (self.spec.theta_plus + self.spec.theta_minus))

    def product_defect(self, t):
        """max |diag(Q₊(t)Q₋(−t)) − σq0²e^{i(θ₊+θ₋)}|."""
        prod = self.Q_plus(t) @ self.Q_minus(-t)
        target = self.product_constant()
        return max(abs(prod[0, 0] - target), abs(prod[1, 1] - target))


def asymptotic_matrices(spec):
    return AsymptoticMatrices(spec)


# =============================================================================
# CONFIG FILE INGESTION
# =============================================================================

_KEYS = ('kind', 'sigma', 'q0', 'theta_plus', 'theta_minus', 'alpha', 'beta')


def spec_from_mapping(data):
    """Build an EquationSpec from a dict with the config keys.

    sigma may be omitted for the Gordon kinds (implied by kind).
    """
    unknown = set(data) - set(_KEYS)
    if unknown:
        raise DomainError(f"Unknown config keys {sorted(unknown)}.  Allowed: {list(_KEYS)}")
    if 'kind' not in data:
        raise DomainError("Config is missing required key 'kind'")
    kind = EquationKind.parse(data['kind'])
    if 'sigma' in data:
        sigma = int(float(data['sigma']))
    elif kind is EquationKind.SINH_GORDON:
        sigma = 1
    elif kind is EquationKind.SINE_GORDON:
        sigma = -1
    else:
        raise DomainError("RST-NLS config needs an explicit 'sigma' (+1 or −1)")
    missing = [k for k in ('q0', 'theta_plus', 'theta_minus', 'alpha') if k not in data]
    if missing:
        raise DomainError(f"Config is missing required keys {missing}")
    try:
        return EquationSpec(
            kind=kind,
            sigma=sigma,
            q0=float(data['q0']),
            theta_plus=float(data['theta_plus']),
            theta_minus=float(data['theta_minus']),
            alpha=float(data['alpha']),
            beta=float(data.get('beta', 0.0)),
        )
    except (TypeError, ValueError) as e:
        raise DomainError(f"Config values must be numeric: {e}") from e


def spec_to_dict(spec):
    return {
        'kind': spec.kind.value,
        'sigma': spec.sigma,
        'q0': spec.q0,
        'theta_plus': spec.theta_plus,
        'theta_minus': spec.theta_minus,
        'alpha': spec.alpha,
        'beta': spec.beta,
    }


def _parse_key_value(text):
    data = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        sep = '=' if '=' in line else (':' if ':' in line else None)
        if sep is None:
            raise DomainError(f"Config line {lineno} is not 'key = value': {raw!r}")
        key, value = (part.strip() for part in line.split(sep, 1))
        data[key] = value
    return data


def load_spec(path, validate_spec=True):
    """Read an EquationSpec from a key-value or JSON file.

    Args:
        path: File path; JSON is detected by a leading '{'
        validate_spec: Run validate() on the result (default True)
    """
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"Config file not found at {path}.  "
            f"Pass --config with a key = value or JSON file, or use inline flags."
        )
    with open(path, encoding='utf-8') as fh:
        text = fh.read()
    if text.lstrip().startswith('{'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DomainError(f"Config {path} is not valid JSON: {e}") from e
    else:
        data = _parse_key_value(text)
    spec = spec_from_mapping(data)
    if validate_spec:
        validate(spec)
    return spec
