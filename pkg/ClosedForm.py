"""
ClosedForm.py
Factory of explicit soliton solutions with singularity metadata
Last updated: 2026-10-19

ONE-SOLITON FAMILIES (kink form):
    q = q0 e^{i(αt + βx)} [A + B·g(w)],  g = tanh (dark) or coth (singular bright),
    w = a·x + b·t.  This is the same field as the cos(θ₊ − i w)·sech(w) and
    two-exponential-ratio displays, rewritten so nothing overflows.

        family                A          B          a             b
        sinh dark / bright    cos θ₊     i sin θ₊   q0 sin θ₊     (α/2) tan θ₊
        sine dark / bright    i sin θ₊   cos θ₊     q0 cos θ₊     −(α/2) cot θ₊
        NLS Case 1            cos θ₊     i sin θ₊   q0 sin θ₊     −q0² sin 2θ₊
        NLS Case 3            i sin θ₊   cos θ₊     q0 cos θ₊     +q0² sin 2θ₊
        spatial BC σ=+1       cos θ₊     i sin θ₊   q0 sin θ₊     −q0 sin θ₊·α/(β − 2q0 cos θ₊)
        spatial BC σ=−1       i sin θ₊   cos θ₊     q0 cos θ₊     −q0 cos θ₊·α/(β + 2q0 sin θ₊)

    Gordon s:  dark   s = s∞ + q0²|B|²(b/a) sech² w
               bright s = s∞ − q0²|B|²(b/a) csch² w,   s∞ = αβ/2

TWO-SOLITON TEMPLATE (sinh sum π with θ₊ = π/2, sine sum 0 with θ₊ = 0,
NLS Cases 2 and 4), Σ = q0² + q1², Δ = q1² − q0², r = Δ/q1, ε = e^{−rx}:

    q = η q0 e^{iαt} Num/Den,  η = i (σ=+1) or 1 (σ=−1)
    Num = Σ²(1+ε⁴) − 4q0⁴e^{4iωt}ε² − 4q1⁴e^{−4iωt}ε² + 2δ₁δ₂Δ²ε²
          + 2η²q0ΔΣ[δ₁e^{2iωt}ε/q1 + δ₂q1e^{−2iωt}ε/q0² − δ₂e^{2iωt}ε³/q1 − δ₁q1e^{−2iωt}ε³/q0²]
    Den = Σ²(1+ε⁴) − 4q0²q1²(e^{4iωt} + e^{−4iωt})ε² − 2δ₁δ₂Δ²ε²
    ω = αΔ/(2Σ) (Gordon) or ΔΣ/(2q1²) (NLS)

    Den·e^{2rx} = 2Σ² cosh 2rx − 8q0²q1² cos 4ωt − 2δ₁δ₂Δ²
        δ₁δ₂ = −1: bounded below by 4Δ² > 0
        δ₁δ₂ = +1: vanishes only at x = 0 with cos 4ωt = 1
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

import Config
from Errors import (CotPole, DegeneratePhase, DomainError, ParameterDomain, TanPole,
                    VelocityPole)
from ModelConfig import EquationKind, EquationSpec, background, nls_alpha, validate
from SpectralPlane import PhaseSum


# =============================================================================
# IDENTIFIERS
# =============================================================================

class Family(Enum):
    SINH_DARK1 = 'sinh-dark1'
    SINH_BRIGHT1_SINGULAR = 'sinh-bright1-singular'
    SINH_TWO = 'sinh-two'
    SINE_DARK1 = 'sine-dark1'
    SINE_BRIGHT1_SINGULAR = 'sine-bright1-singular'
    SINE_TWO = 'sine-two'
    NLS_CASE1_DARK = 'nls-case1-dark'
    NLS_CASE1_SINGULAR = 'nls-case1-singular'
    NLS_CASE2_TWO = 'nls-case2-two'
    NLS_CASE3_DARK = 'nls-case3-dark'
    NLS_CASE3_SINGULAR = 'nls-case3-singular'
    NLS_CASE4_TWO = 'nls-case4-two'
    SPATIAL_BC_SINH = 'spatial-bc-sinh'
    SPATIAL_BC_SINE = 'spatial-bc-sine'

    @property
    def is_two(self):
        return self in _TWO_FAMILIES

    @property
    def kind(self):
        return _FAMILY_TABLE[self][0]

    @property
    def sigma(self):
        return _FAMILY_TABLE[self][1]

    @property
    def phase_sum(self):
        return _FAMILY_TABLE[self][2]

    @property
    def fixed_delta(self):
        """δ of a one-soliton family (None for two-soliton families)."""
        return _FAMILY_TABLE[self][3]


_TWO_FAMILIES = {Family.SINH_TWO, Family.SINE_TWO, Family.NLS_CASE2_TWO, Family.NLS_CASE4_TWO}

_S, _G, _N = EquationKind.SINH_GORDON, EquationKind.SINE_GORDON, EquationKind.RST_NLS
_Z, _P = PhaseSum.ZERO, PhaseSum.PI

# family → (kind, σ, phase sum, δ)
_FAMILY_TABLE = {
    Family.SINH_DARK1: (_S, 1, _Z, 1),
    Family.SINH_BRIGHT1_SINGULAR: (_S, 1, _Z, -1),
    Family.SINH_TWO: (_S, 1, _P, None),
    Family.SINE_DARK1: (_G, -1, _P, -1),
    Family.SINE_BRIGHT1_SINGULAR: (_G, -1, _P, 1),
    Family.SINE_TWO: (_G, -1, _Z, None),
    Family.NLS_CASE1_DARK: (_N, 1, _Z, 1),
    Family.NLS_CASE1_SINGULAR: (_N, 1, _Z, -1),
    Family.NLS_CASE2_TWO: (_N, 1, _P, None),
    Family.NLS_CASE3_DARK: (_N, -1, _P, -1),
    Family.NLS_CASE3_SINGULAR: (_N, -1, _P, 1),
    Family.NLS_CASE4_TWO: (_N, -1, _Z, None),
    Family.SPATIAL_BC_SINH: (_S, 1, _Z, 1),
    Family.SPATIAL_BC_SINE: (_G, -1, _P, -1),
}


@dataclass(frozen=True)
class SolutionId:
    """Family plus its free parameters (δ-signs, and q1 for two-solitons)."""

    family: Family
    deltas: tuple = ()
    q1: float = None

    def __post_init__(self):
        deltas = tuple(int(d) for d in self.deltas)
        if not deltas and not self.family.is_two:
            deltas = (self.family.fixed_delta,)
        if self.family.is_two:
            if len(deltas) != 2:
                raise DomainError(f"{self.family.value} needs two δ-signs, got {deltas}")
            if self.q1 is None:
                raise DomainError(f"{self.family.value} needs q1 > q0")
        elif deltas != (self.family.fixed_delta,):
            raise DomainError(
                f"{self.family.value} has δ = {self.family.fixed_delta}, got {deltas}"
            )
        if any(d not in (1, -1) for d in deltas):
            raise DomainError(f"δ-signs must be ±1, got {deltas}")
        object.__setattr__(self, 'deltas', deltas)

    @property
    def singular(self):
        if self.family.is_two:
            return self.deltas[0] * self.deltas[1] == 1
        return self.family in (Family.SINH_BRIGHT1_SINGULAR, Family.SINE_BRIGHT1_SINGULAR,
                               Family.NLS_CASE1_SINGULAR, Family.NLS_CASE3_SINGULAR)


@dataclass(frozen=True)
class SingularLine:
    """Affine space-time line a·x + b·t = c."""

    a: float
    b: float
    c: float = 0.0

    def distance(self, x, t):
        return np.abs(self.a * np.asarray(x) + self.b * np.asarray(t) - self.c) / math.hypot(self.a, self.b)

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'c': self.c}


@dataclass(frozen=True, eq=False)
class FieldSolution:
    """An evaluable field q(x,t) (and s(x,t) for Gordon kinds) with metadata.

    eval_q / eval_s / eval_q_t accept numpy arrays and broadcast.
    scaled_denominator, when present, is a positive multiple of the
    denominator whose zero set is the singular set; denominator_floor is a
    certified lower bound for it on nonsingular families.
    """

    spec: EquationSpec
    id: SolutionId
    eval_q: object
    eval_s: object = None
    singular_lines: tuple = ()
    decay_rate: float = None
    eval_q_t: object = None
    scaled_denominator: object = None
    denominator_floor: float = None
    removable_lines: tuple = ()
    point_singularities: bool = False
    label: str = ''

    @property
    def is_gordon(self):
        return self.spec.is_gordon

    @property
    def singular(self):
        return bool(self.singular_lines)

    def q(self, x, t):
        return self.eval_q(np.asarray(x, dtype=float), np.asarray(t, dtype=float))

    def s(self, x, t):
        if self.eval_s is None:
            raise DomainError(f"{self.label or self.id.family.value} has no closed-form s")
        return self.eval_s(np.asarray(x, dtype=float), np.asarray(t, dtype=float))

    def boundary(self, side, x, t):
        """Background value q0 e^{i(αt + θ±)}·e^{iβx} the field should approach."""
        return background(self.spec, side, t) * np.exp(1j * self.spec.beta * np.asarray(x))

    def s_limit(self):
        return 0.5 * self.spec.alpha * self.spec.beta


# =============================================================================
# EXPONENTIAL BASIS
# =============================================================================

@dataclass(frozen=True, eq=False)
class ExpSum:
    """Σ_k c_k e^{a_k x + b_k t} with complex c, a, b."""

    coeffs: np.ndarray
    x_rates: np.ndarray
    t_rates: np.ndarray

    @classmethod
    def from_terms(cls, terms):
        arr = np.array(terms, dtype=complex)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2])

    def exponents(self, x, t):
        x = np.asarray(x, dtype=float)[..., None]
        t = np.asarray(t, dtype=float)[..., None]
        return self.x_rates * x + self.t_rates * t

    def evaluate(self, x, t, shift=0.0):
        return np.sum(self.coeffs * np.exp(self.exponents(x, t) - shift), axis=-1)

    def d_t(self):
        return ExpSum(self.coeffs * self.t_rates, self.x_rates, self.t_rates)

    def d_x(self):
        return ExpSum(self.coeffs * self.x_rates, self.x_rates, self.t_rates)

    def times(self, factor, t_rate=0.0):
        """Multiply by factor·e^{t_rate·t}."""
        return ExpSum(self.coeffs * factor, self.x_rates, self.t_rates + t_rate)


@dataclass(frozen=True, eq=False)
class ExpRatio:
    """num/den of two ExpSums, evaluated with a common exponent shift."""

    num: ExpSum
    den: ExpSum

    def _shift(self, x, t):
        both = np.concatenate([self.num.exponents(x, t).real, self.den.exponents(x, t).real], axis=-1)
        return np.max(both, axis=-1, keepdims=True)

    def __call__(self, x, t):
        shift = self._shift(x, t)
        return self.num.evaluate(x, t, shift) / self.den.evaluate(x, t, shift)

    def d_t(self, x, t):
        shift = self._shift(x, t)
        n = self.num.evaluate(x, t, shift)
        d = self.den.evaluate(x, t, shift)
        return (self.num.d_t().evaluate(x, t, shift) * d - n * self.den.d_t().evaluate(x, t, shift)) / d ** 2


# =============================================================================
# KINK PROFILES (one-soliton)
# =============================================================================

@dataclass(frozen=True)
class _Kink:
    q0: float
    alpha: float
    beta: float
    A: complex
    B: complex
    a: float
    b: float
    coth: bool

    def w(self, x, t):
        return self.a * x + self.b * t

    def carrier(self, x, t):
        return self.q0 * np.exp(1j * (self.alpha * t + self.beta * x))

    def g(self, w):
        return 1.0 / np.tanh(w) if self.coth else np.tanh(w)

    def dg(self, w):
        return -1.0 / np.sinh(w) ** 2 if self.coth else 1.0 / np.cosh(w) ** 2

    def q(self, x, t):
        return self.carrier(x, t) * (self.A + self.B * self.g(self.w(x, t)))

    def q_t(self, x, t):
        w = self.w(x, t)
        return self.carrier(x, t) * (1j * self.alpha * (self.A + self.B * self.g(w))
                                     + self.B * self.dg(w) * self.b)

    def s(self, x, t):
        """Gordon s = s∞ ± q0²|B|²(b/a)·{sech², csch²}(w)."""
        w = self.w(x, t)
        amp = self.q0 ** 2 * abs(self.B) ** 2 * self.b / self.a
        shape = -1.0 / np.sinh(w) ** 2 if self.coth else 1.0 / np.cosh(w) ** 2
        return 0.5 * self.alpha * self.beta + amp * shape + 0j

    def denominator(self, x, t):
        """sinh(w) for coth profiles (zero on the singular line), cosh(w) otherwise."""
        w = self.w(x, t)
        return np.sinh(w) if self.coth else np.cosh(w)

    def line(self):
        return SingularLine(self.a, self.b, 0.0)


def _kink_solution(spec, sol_id, kink, decay_rate, with_s, label, removable=False):
    line = kink.line()
    return FieldSolution(
        spec=spec,
        id=sol_id,
        eval_q=kink.q,
        eval_s=kink.s if with_s else None,
        singular_lines=(line,) if kink.coth else (),
        decay_rate=decay_rate,
        eval_q_t=kink.q_t,
        scaled_denominator=kink.denominator,
        denominator_floor=None if kink.coth else 1.0,
        removable_lines=(line,) if removable else (),
        label=label,
    )


# =============================================================================
# PRECONDITIONS
# =============================================================================

def _near(value, target, tol=Config.PHASE_TOL):
    return abs(value - target) <= tol


def _require(spec, family):
    if spec.kind is not family.kind:
        raise DomainError(f"{family.value} needs a {family.kind.value} spec, got {spec.kind.value}")
    validate(spec)
    if spec.phase_sum is not family.phase_sum:
        need = '0' if family.phase_sum is PhaseSum.ZERO else 'π'
        raise DomainError(f"{family.value} needs θ₊ + θ₋ = {need}")
    if spec.sigma != family.sigma:
        raise DomainError(f"{family.value} needs σ = {family.sigma:+d}")
    if family not in (Family.SPATIAL_BC_SINH, Family.SPATIAL_BC_SINE) and spec.beta != 0.0:
        raise DomainError(f"{family.value} needs β = 0; use make_spatial_bc or boost_nls for β ≠ 0")


def _with_theta(spec, theta_plus):
    return spec if theta_plus is None else spec.with_phase(theta_plus)


def _sinh_type_phase(theta, alpha, tangent=True):
    """θ₊ checks for the cos θ₊ + i sin θ₊·g(w) families."""
    s, c = math.sin(theta), math.cos(theta)
    if _near(s, 0.0):
        raise DegeneratePhase(f"θ₊ = {theta:.12g} ∈ {{0, π}} makes the soliton vanish into the background")
    if s < 0:
        raise ParameterDomain(f"θ₊ = {theta:.12g} must lie in (0, π) so q → q₊ as x → +∞")
    if tangent and _near(c, 0.0) and alpha != 0.0:
        raise TanPole(f"θ₊ = π/2 with α = {alpha} puts tan θ₊ at its pole")


def _sine_type_phase(theta, alpha, cotangent=True):
    """θ₊ checks for the i sin θ₊ + cos θ₊·g(w) families."""
    s, c = math.sin(theta), math.cos(theta)
    if _near(c, 0.0):
        raise DegeneratePhase(f"θ₊ = {theta:.12g} ∈ {{π/2, 3π/2}} makes the soliton vanish into the background")
    if c < 0:
        raise ParameterDomain(f"θ₊ = {theta:.12g} must satisfy cos θ₊ > 0 so q → q₊ as x → +∞")
    if cotangent and _near(s, 0.0) and alpha != 0.0:
        raise CotPole(f"θ₊ ∈ {{0, π}} with α = {alpha} puts cot θ₊ at its pole")


# =============================================================================
# GORDON ONE-SOLITONS
# =============================================================================

def _sinh_kink(spec, coth):
    theta, alpha, q0 = spec.theta_plus, spec.alpha, spec.q0
    _sinh_type_phase(theta, alpha)
    b = 0.0 if alpha == 0.0 else 0.5 * alpha * math.tan(theta)
    return _Kink(q0, alpha, 0.0, math.cos(theta), 1j * math.sin(theta), q0 * math.sin(theta), b, coth)


def _sine_kink(spec, coth):
    theta, alpha, q0 = spec.theta_plus, spec.alpha, spec.q0
    _sine_type_phase(theta, alpha)
    b = 0.0 if alpha == 0.0 else -0.5 * alpha / math.tan(theta)
    return _Kink(q0, alpha, 0.0, 1j * math.sin(theta), math.cos(theta), q0 * math.cos(theta), b, coth)


def make_sinh_dark1(spec, theta_plus=None):
    """Nonsingular dark 1-soliton of the RST sinh-Gordon equation (δ = +1).

    q = q0 e^{iαt} cos(θ₊ − i w) sech w,  w = q0 x sin θ₊ + (α/2) t tan θ₊
    s = (1/2) q0 α sin θ₊ tan θ₊ sech² w

    Examples:
        (q0=2, α=1, θ₊=π/3) at (0, 0) → q = 1
    """
    spec = _with_theta(spec, theta_plus)
    _require(spec, Family.SINH_DARK1)
    kink = _sinh_kink(spec, coth=False)
    return _kink_solution(spec, SolutionId(Family.SINH_DARK1), kink,
                          2.0 * spec.q0 * math.sin(spec.theta_plus), True, 'sinh dark 1-soliton')


def make_sinh_bright1_singular(spec, theta_plus=None):
    """Singular bright 1-soliton (δ = −1): cos θ₊ + i sin θ₊ coth w."""
    spec = _with_theta(spec, theta_plus)
    _require(spec, Family.SINH_BRIGHT1_SINGULAR)
    kink = _sinh_kink(spec, coth=True)
    return _kink_solution(spec, SolutionId(Family.SINH_BRIGHT1_SINGULAR), kink,
                          2.0 * spec.q0 * math.sin(spec.theta_plus), True, 'sinh bright 1-soliton (singular)')


def make_sine_dark1(spec, theta_plus=None):
    """Nonsingular dark 1-soliton of the RST sine-Gordon equation (δ = −1).

    q = q0 e^{iαt}[i sin θ₊ + cos θ₊ tanh(q0 x cos θ₊ − (αt/2) cot θ₊)]
    s = −(1/2) q0 α cos θ₊ cot θ₊ sech²(·)
    """
    spec = _with_theta(spec, theta_plus)
    _require(spec, Family.SINE_DARK1)
    kink = _sine_kink(spec, coth=False)
    return _kink_solution(spec, SolutionId(Family.SINE_DARK1), kink,
                          2.0 * spec.q0 * math.cos(spec.theta_plus), True, 'sine dark 1-soliton')


def make_sine_bright1_singular(spec, theta_plus=None):
    """Singular bright 1-soliton (δ = +1): i sin θ₊ + cos θ₊ coth(·)."""
    spec = _with_theta(spec, theta_plus)
    _require(spec, Family.SINE_BRIGHT1_SINGULAR)
    kink = _sine_kink(spec, coth=True)
    return _kink_solution(spec, SolutionId(Family.SINE_BRIGHT1_SINGULAR), kink,
                          2.0 * spec.q0 * math.cos(spec.theta_plus), True, 'sine bright 1-soliton (singular)')


# =============================================================================
# RST-NLS ONE-SOLITONS
# =============================================================================

def _nls_case1(spec, family):
    _require(spec, family)
    theta, q0 = spec.theta_plus, spec.q0
    _sinh_type_phase(theta, spec.alpha, tangent=False)
    kink = _Kink(q0, spec.alpha, 0.0, math.cos(theta), 1j * math.sin(theta),
                 q0 * math.sin(theta), -q0 * q0 * math.sin(2.0 * theta),
                 family is Family.NLS_CASE1_SINGULAR)
    return _kink_solution(spec, SolutionId(family), kink, 2.0 * q0 * math.sin(theta), False,
                          f'RST-NLS Case 1 ({"singular" if kink.coth else "dark"})')


def _nls_case3(spec, family):
    _require(spec, family)
    theta, q0 = spec.theta_plus, spec.q0
    _sine_type_phase(theta, spec.alpha, cotangent=False)
    kink = _Kink(q0, spec.alpha, 0.0, 1j * math.sin(theta), math.cos(theta),
                 q0 * math.cos(theta), q0 * q0 * math.sin(2.0 * theta),
                 family is Family.NLS_CASE3_SINGULAR)
    return _kink_solution(spec, SolutionId(family), kink, 2.0 * q0 * math.cos(theta), False,
                          f'RST-NLS Case 3 ({"singular" if kink.coth else "dark"})')


def make_nls_case1(spec, delta=1):
    """Case 1 (σ=1, sum 0): δ = 1 dark, δ = −1 routed to the singular family.

    q = q0 e^{2iq0²t}[cos θ₊ + i sin θ₊ tanh(q0 sin θ₊ (x − 2q0 t cos θ₊))]

    Examples:
        (q0=2, θ₊=π/3) at (0, 0) → q0 (e^{iθ₊} + e^{−iθ₊})/2 = 1
    """
    return _nls_case1(spec, Family.NLS_CASE1_DARK if delta == 1 else Family.NLS_CASE1_SINGULAR)


def make_nls_case1_singular(spec):
    return _nls_case1(spec, Family.NLS_CASE1_SINGULAR)


def make_nls_case3(spec, delta=-1):
    """Case 3 (σ=−1, sum π): δ = −1 dark, δ = +1 singular.

    q = q0 e^{2iq0²t}[i sin θ₊ + cos θ₊ tanh(q0 cos θ₊ (x + 2q0 t sin θ₊))]
    """
    return _nls_case3(spec, Family.NLS_CASE3_DARK if delta == -1 else Family.NLS_CASE3_SINGULAR)


def make_nls_case3_singular(spec):
    return _nls_case3(spec, Family.NLS_CASE3_SINGULAR)


# =============================================================================
# TWO-SOLITONS
# =============================================================================

def two_soliton_frequency(spec, q1):
    """ω of the two-soliton template: αΔ/(2Σ) for Gordon, ΔΣ/(2q1²) for RST-NLS."""
    q0 = spec.q0
    sigma_sq = q0 * q0 + q1 * q1
    delta_sq = q1 * q1 - q0 * q0
    if spec.is_gordon:
        return spec.alpha * delta_sq / (2.0 * sigma_sq)
    return delta_sq * sigma_sq / (2.0 * q1 * q1)


def _two_soliton(spec, family, deltas, q1):
    _require(spec, family)
    q0 = spec.q0
    if q1 is None or not q1 > q0:
        raise ParameterDomain(f"Two-soliton families need q1 > q0 = {q0}, got q1 = {q1}")
    required = math.pi / 2.0 if spec.sigma == 1 else 0.0
    if not _near(min(abs(spec.theta_plus - required), Config.TWO_PI - abs(spec.theta_plus - required)), 0.0):
        raise ParameterDomain(
            f"{family.value} is built on θ₊ = {'π/2' if spec.sigma == 1 else '0'}, "
            f"got θ₊ = {spec.theta_plus:.12g}"
        )
    sol_id = SolutionId(family, tuple(deltas), float(q1))
    d1, d2 = sol_id.deltas
    eta = 1j if spec.sigma == 1 else 1.0 + 0j
    alpha = spec.alpha
    S = q0 * q0 + q1 * q1
    D = q1 * q1 - q0 * q0
    r = D / q1
    om = two_soliton_frequency(spec, q1)
    cross = 2.0 * eta * eta * q0 * D * S

    num_terms = [
        (S * S, 0.0, 0.0),
        (S * S, -4.0 * r, 0.0),
        (-4.0 * q0 ** 4, -2.0 * r, 4j * om),
        (-4.0 * q1 ** 4, -2.0 * r, -4j * om),
        (2.0 * d1 * d2 * D * D, -2.0 * r, 0.0),
        (cross * d1 / q1, -r, 2j * om),
        (cross * d2 * q1 / q0 ** 2, -r, -2j * om),
        (-cross * d2 / q1, -3.0 * r, 2j * om),
        (-cross * d1 * q1 / q0 ** 2, -3.0 * r, -2j * om),
    ]
    den_terms = [
        (S * S, 0.0, 0.0),
        (S * S, -4.0 * r, 0.0),
        (-4.0 * q0 * q0 * q1 * q1, -2.0 * r, 4j * om),
        (-4.0 * q0 * q0 * q1 * q1, -2.0 * r, -4j * om),
        (-2.0 * d1 * d2 * D * D, -2.0 * r, 0.0),
    ]
    ratio = ExpRatio(ExpSum.from_terms(num_terms).times(eta * q0, 1j * alpha),
                     ExpSum.from_terms(den_terms))

    def scaled_denominator(x, t):
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        return (2.0 * S * S * np.cosh(2.0 * r * x)
                - 8.0 * q0 * q0 * q1 * q1 * np.cos(4.0 * om * t)
                - 2.0 * d1 * d2 * D * D)

    singular = d1 * d2 == 1
    return FieldSolution(
        spec=spec,
        id=sol_id,
        eval_q=ratio,
        eval_s=None,
        singular_lines=(SingularLine(1.0, 0.0, 0.0),) if singular else (),
        decay_rate=r,
        eval_q_t=ratio.d_t,
        scaled_denominator=scaled_denominator,
        denominator_floor=None if singular else 4.0 * D * D,
        point_singularities=singular,
        label=f'{family.value} (δ₁={d1:+d}, δ₂={d2:+d}, q1={q1:g})',
    )


def make_sinh_two(spec, deltas=(1, -1), q1=Config.FIGURE_Q1):
    """Two-soliton of RST sinh-Gordon, sum π, eigenvalues {iq1, −iq0²/q1}."""
    return _two_soliton(spec, Family.SINH_TWO, deltas, q1)


def make_sine_two(spec, deltas=(1, -1), q1=Config.FIGURE_Q1):
    """Two-soliton of RST sine-Gordon, sum 0, eigenvalues {iq1, −iq0²/q1}."""
    return _two_soliton(spec, Family.SINE_TWO, deltas, q1)


def make_gordon_two_singular(spec, delta=1, q1=Config.FIGURE_Q1):
    """δ₁ = δ₂ = δ two-soliton of either Gordon equation (blows up on x = 0)."""
    family = Family.SINH_TWO if spec.kind is EquationKind.SINH_GORDON else Family.SINE_TWO
    return _two_soliton(spec, family, (delta, delta), q1)


def make_nls_case2(spec, deltas=(1, -1), q1=Config.FIGURE_Q1):
    """Case 2 (σ=1, sum π) breather-type two-soliton; period π/ω in t."""
    return _two_soliton(spec, Family.NLS_CASE2_TWO, deltas, q1)


def make_nls_case4(spec, deltas=(1, -1), q1=Config.FIGURE_Q1):
    """Case 4 (σ=−1, sum 0) two-soliton."""
    return _two_soliton(spec, Family.NLS_CASE4_TWO, deltas, q1)


# =============================================================================
# SPATIALLY DEPENDENT BOUNDARY CONDITIONS
# =============================================================================

def make_spatial_bc(spec):
    """Gordon 1-soliton on the background q0 e^{i(αt + βx + θ±)}.

    σ = +1: q = q0 e^{i(αt+βx)}[cos θ₊ + i sin θ₊ tanh(q0 sin θ₊ (x − vt))],  v = α/(β − 2q0 cos θ₊)
    σ = −1: q = q0 e^{i(αt+βx)}[i sin θ₊ + cos θ₊ tanh(q0 cos θ₊ (x − vt))],  v = α/(β + 2q0 sin θ₊)
    s → αβ/2 as |x| → ∞.  The σ = −1 rational-exponential display has a
    removable 0/0 on x = vt; this reduced form is regular there.

    Raises:
        VelocityPole: β − 2q0 cos θ₊ = 0 (σ=+1) or β + 2q0 sin θ₊ = 0 (σ=−1)
    """
    if not spec.is_gordon:
        raise DomainError("make_spatial_bc needs a Gordon spec; use boost_nls for RST-NLS")
    theta, q0, alpha, beta = spec.theta_plus, spec.q0, spec.alpha, spec.beta
    if spec.sigma == 1:
        _require(spec, Family.SPATIAL_BC_SINH)
        _sinh_type_phase(theta, alpha, tangent=False)
        denom = beta - 2.0 * q0 * math.cos(theta)
        if abs(denom) <= Config.PHASE_TOL * max(1.0, abs(beta)):
            raise VelocityPole(f"β − 2q0 cos θ₊ = 0 (β = {beta}): the soliton velocity is infinite")
        v = alpha / denom
        a = q0 * math.sin(theta)
        kink = _Kink(q0, alpha, beta, math.cos(theta), 1j * math.sin(theta), a, -a * v, False)
        return _kink_solution(spec, SolutionId(Family.SPATIAL_BC_SINH), kink, 2.0 * a, True,
                              'spatial-BC sinh 1-soliton')
    _require(spec, Family.SPATIAL_BC_SINE)
    _sine_type_phase(theta, alpha, cotangent=False)
    denom = beta + 2.0 * q0 * math.sin(theta)
    if abs(denom) <= Config.PHASE_TOL * max(1.0, abs(beta)):
        raise VelocityPole(f"β + 2q0 sin θ₊ = 0 (β = {beta}): the soliton velocity is infinite")
    v = alpha / denom
    a = q0 * math.cos(theta)
    kink = _Kink(q0, alpha, beta, 1j * math.sin(theta), math.cos(theta), a, -a * v, False)
    return _kink_solution(spec, SolutionId(Family.SPATIAL_BC_SINE), kink, 2.0 * a, True,
                          'spatial-BC sine 1-soliton', removable=True)


# =============================================================================
# GALILEAN BOOST (RST-NLS)
# =============================================================================

def boost_nls(sol, beta):
    """q₂(x,t) = q₁(x + 2βt, t) e^{i(βx + β²t)} for an RST-NLS solution q₁.

    The boosted background is q0 e^{i((α+β²)t + βx + θ±)}.
    """
    if sol.is_gordon:
        raise DomainError("boost_nls applies to RST-NLS solutions only")
    if sol.spec.beta != 0.0:
        raise DomainError("boost_nls expects an unboosted (β = 0) solution")
    beta = float(beta)
    base_q, base_q_t = sol.eval_q, sol.eval_q_t

    def eval_q(x, t):
        return base_q(x + 2.0 * beta * t, t) * np.exp(1j * (beta * x + beta * beta * t))

    eval_q_t = None
    if base_q_t is not None:
        def eval_q_t(x, t):
            # total derivative: ∂t q₁ + 2β ∂x q₁ (∂x by 4th-order stencil), plus the phase
            xs = x + 2.0 * beta * t
            h = Config.FD_STEP
            qx = (base_q(xs - 2 * h, t) - 8 * base_q(xs - h, t)
                  + 8 * base_q(xs + h, t) - base_q(xs + 2 * h, t)) / (12.0 * h)
            phase = np.exp(1j * (beta * x + beta * beta * t))
            return (base_q_t(xs, t) + 2.0 * beta * qx + 1j * beta * beta * base_q(xs, t)) * phase

    lines = tuple(SingularLine(l.a, l.b + 2.0 * beta * l.a, l.c) for l in sol.singular_lines)
    scaled = None
    if sol.scaled_denominator is not None:
        base_den = sol.scaled_denominator

        def scaled(x, t):
            return base_den(x + 2.0 * beta * t, t)

    spec = replace(sol.spec, alpha=sol.spec.alpha + beta * beta, beta=beta)
    return replace(sol, spec=spec, eval_q=eval_q, eval_q_t=eval_q_t, singular_lines=lines,
                   scaled_denominator=scaled, label=f'{sol.label} boosted by β={beta:g}')


# =============================================================================
# REGISTRY
# =============================================================================

def default_spec_for(family, q0=Config.FIGURE_Q0, alpha=None, theta_plus=None, beta=None):
    """Spec matching a family, filling unspecified values with figure defaults.

    RST-NLS α is forced by σ, q0 and the phase sum; an explicit alpha is
    checked later by validate().
    """
    family = Family(family) if not isinstance(family, Family) else family
    kind, sigma, summ = family.kind, family.sigma, family.phase_sum
    if family.is_two:
        theta = math.pi / 2.0 if sigma == 1 else 0.0
    else:
        theta = Config.FIGURE_THETA_PLUS if theta_plus is None else float(theta_plus)
    if theta_plus is not None and family.is_two:
        theta = float(theta_plus)
    theta_minus = (0.0 if summ is PhaseSum.ZERO else math.pi) - theta
    if beta is None:
        beta = 1.0 if family in (Family.SPATIAL_BC_SINH, Family.SPATIAL_BC_SINE) else 0.0
    if kind is EquationKind.RST_NLS:
        if alpha is None:
            alpha = nls_alpha(sigma, q0, summ)
    elif alpha is None:
        alpha = Config.FIGURE_ALPHA
    return EquationSpec(kind, sigma, q0, theta, theta_minus, alpha, beta)


_BUILDERS = {
    Family.SINH_DARK1: lambda spec, sid: make_sinh_dark1(spec),
    Family.SINH_BRIGHT1_SINGULAR: lambda spec, sid: make_sinh_bright1_singular(spec),
    Family.SINE_DARK1: lambda spec, sid: make_sine_dark1(spec),
    Family.SINE_BRIGHT1_SINGULAR: lambda spec, sid: make_sine_bright1_singular(spec),
    Family.SINH_TWO: lambda spec, sid: make_sinh_two(spec, sid.deltas, sid.q1),
    Family.SINE_TWO: lambda spec, sid: make_sine_two(spec, sid.deltas, sid.q1),
    Family.NLS_CASE1_DARK: lambda spec, sid: make_nls_case1(spec, 1),
    Family.NLS_CASE1_SINGULAR: lambda spec, sid: make_nls_case1_singular(spec),
    Family.NLS_CASE2_TWO: lambda spec, sid: make_nls_case2(spec, sid.deltas, sid.q1),
    Family.NLS_CASE3_DARK: lambda spec, sid: make_nls_case3(spec, -1),
    Family.NLS_CASE3_SINGULAR: lambda spec, sid: make_nls_case3_singular(spec),
    Family.NLS_CASE4_TWO: lambda spec, sid: make_nls_case4(spec, sid.deltas, sid.q1),
    Family.SPATIAL_BC_SINH: lambda spec, sid: make_spatial_bc(spec),
    Family.SPATIAL_BC_SINE: lambda spec, sid: make_spatial_bc(spec),
}


def make_solution(sol_id, spec):
    """Dispatch a SolutionId to its factory."""
    return _BUILDERS[sol_id.family](spec, sol_id)


def build_family(name, q0=Config.FIGURE_Q0, alpha=None, theta_plus=None, beta=None,
                 deltas=None, q1=None):
    """One-call construction used by the CLI.

    Examples:
        build_family('sinh-dark1')                         → figure-parameter dark soliton
        build_family('nls-case2-two', deltas=(1, -1), q1=4) → Case 2 breather
    """
    try:
        family = Family(name)
    except ValueError as e:
        raise DomainError(
            f"Unknown family {name!r}.  Choose from: {', '.join(f.value for f in Family)}"
        ) from e
    spec = default_spec_for(family, q0, alpha, theta_plus, beta)
    if family.is_two:
        sol_id = SolutionId(family, tuple(deltas or (1, -1)), Config.FIGURE_Q1 if q1 is None else q1)
    else:
        sol_id = SolutionId(family)
    return make_solution(sol_id, spec)
