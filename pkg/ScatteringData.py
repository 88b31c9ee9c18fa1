"""
ScatteringData.py
Discrete and continuous scattering data: trace formulas, constraints, time evolution
Last updated: 2026-10-19

TRACE FORMULA:
    a(z) = ∏_j (z − z_j)/(z − z̄_j) · exp[ (1/2πi) ∫_Σ log(1 ± b(ξ)²)/(ξ − z) dξ ]
    ā(z) = ∏_j (z − z̄_j)/(z − z_j) · exp[ −(same integral) ]

    + for σ = +1 (sinh / RST-NLS Cases 1-2), − for σ = −1.
    z̄_j is always the involution image of z_j.

    Σ orientation (analytic region D⁺ on the left):
        RealCut       real axis, left to right
        ImaginaryCut  (−∞, −q0) and (q0, ∞) left to right, upper semicircle
                      clockwise, segment q0 → −q0, lower semicircle anticlockwise

REFLECTIONLESS CONSTRAINT (equivalent to a(0) = case.origin_limit(θ₊)):
    sinh0   ∏z_j = ±q0^J e^{iθ₊}
    sinhpi  ∏z_j = ±i^{J+1} q0^J e^{iθ₊}     (J ≥ 2)
    sinepi  ∏z_j = ±i q0^J e^{iθ₊}
    sine0   ∏z_j = ±i^J q0^J e^{iθ₊}         (J ≥ 2)

TIME EVOLUTION:
    b(z;t) = b(z;0) e^{κ(z)t},   b̄(z;t) = b̄(z;0) e^{−κ(z)t}
        Gordon, β = 0    κ = −i(α − αλ/k)
        Gordon, β ≠ 0    κ = −iα(2k − 2λ − β)/(2k − β)
        RST-NLS          κ = −i(α + 4λk − 4λβ)
"""

import cmath
import json
import logging
import math
import os
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate

import Config
from Errors import (ConstraintViolated, ContourPole, DomainError, ImproperEigenvalue,
                    KPole, LogBranch, MissingDerivative, RepeatedZero)
from SpectralPlane import (CutTopology, RegionTag, SymmetryCase, classify,
                           distance_to_contour, involution_z, k_of, lambda_of)

logger = logging.getLogger(__name__)


# =============================================================================
# RECORDS
# =============================================================================

@dataclass(frozen=True)
class DiscreteEigen:
    """One eigenvalue pair with norming constants and trace derivatives."""

    z: complex
    z_bar: complex
    b: complex
    b_bar: complex
    a_prime: complex = None
    a_bar_prime: complex = None


@dataclass(frozen=True, eq=False)
class ReflectionSample:
    """Samples of b(ξ) on the continuous spectrum Σ.

    Real-axis samples are interpolated in Re ξ, circle samples (non-real ξ) in
    arg ξ.  b is taken as zero outside the sampled ranges.
    """

    xi: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=complex).ravel()
        b = np.asarray(self.b, dtype=complex).ravel()
        if xi.shape != b.shape:
            raise DomainError(f"Reflection samples need equal lengths, got {xi.size} and {b.size}")
        object.__setattr__(self, 'xi', xi)
        object.__setattr__(self, 'b', b)

        on_line = np.abs(xi.imag) <= Config.CONTOUR_TOL * np.maximum(1.0, np.abs(xi))
        line_x = xi[on_line].real
        order = np.argsort(line_x)
        circle_phi = np.angle(xi[~on_line])
        corder = np.argsort(circle_phi)
        object.__setattr__(self, '_line_x', line_x[order])
        object.__setattr__(self, '_line_b', b[on_line][order])
        object.__setattr__(self, '_circle_phi', circle_phi[corder])
        object.__setattr__(self, '_circle_b', b[~on_line][corder])

    def __len__(self):
        return int(self.xi.size)

    @property
    def is_empty(self):
        return self.xi.size == 0 or not np.any(self.b != 0)

    @staticmethod
    def _interp(at, nodes, values):
        if nodes.size == 0:
            return np.zeros_like(np.asarray(at, dtype=float), dtype=complex)
        return (np.interp(at, nodes, values.real, left=0.0, right=0.0)
                + 1j * np.interp(at, nodes, values.imag, left=0.0, right=0.0))

    def on_line(self, s):
        """b at real ξ = s."""
        return self._interp(s, self._line_x, self._line_b)

    def on_circle(self, phi):
        """b at ξ = q0 e^{iφ}."""
        return self._interp(phi, self._circle_phi, self._circle_b)

    def line_range(self):
        xs = self._line_x
        return (float(xs.min()), float(xs.max())) if xs.size else None

    def scaled(self, factors):
        return ReflectionSample(self.xi, self.b * factors)


@dataclass(frozen=True)
class ScatteringData:
    """Scattering data of one symmetry case at time `time`."""

    case: SymmetryCase
    q0: float
    theta_plus: float
    discrete: tuple = field(default_factory=tuple)
    reflection: ReflectionSample = None
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'discrete', tuple(self.discrete))
        if not self.q0 > 0:
            raise DomainError(f"q0 must be positive, got {self.q0}")

    @property
    def topology(self):
        return self.case.topology

    @property
    def J(self):
        return len(self.discrete)

    @property
    def is_reflectionless(self):
        return self.reflection is None or self.reflection.is_empty

    @property
    def eigenvalues(self):
        return np.array([d.z for d in self.discrete], dtype=complex)

    @property
    def eigenvalues_bar(self):
        return np.array([d.z_bar for d in self.discrete], dtype=complex)

    @property
    def sign(self):
        """+1 for sinh-type data (log(1 + b²)), −1 for sine-type."""
        return self.case.sigma


# =============================================================================
# CONSTRUCTION
# =============================================================================

def from_eigenvalues(case, q0, theta_plus, eigenvalues, deltas):
    """Reflectionless data at t = 0 from upper eigenvalues and δ-signs.

    b_j = δ_j i, b̄_j = −δ_j i (σ = +1);  b_j = b̄_j = δ_j (σ = −1).
    z̄_j is the involution image of z_j; a′ and ā′ are filled in.

    Examples:
        (sinh0, 2, π/3, [2e^{iπ/3}], [1]) → b₁ = i, b̄₁ = −i
    """
    eigenvalues = [complex(z) for z in eigenvalues]
    deltas = list(deltas)
    if len(deltas) != len(eigenvalues):
        raise DomainError(
            f"Need one δ per eigenvalue: got {len(eigenvalues)} eigenvalues "
            f"and {len(deltas)} δ-signs"
        )
    discrete = []
    for z, delta in zip(eigenvalues, deltas):
        if delta not in (1, -1):
            raise DomainError(f"δ must be +1 or −1, got {delta}")
        b = delta * case.b_unit
        b_bar = -b if case.sigma == 1 else b
        discrete.append(DiscreteEigen(z, involution_z(z, q0, case.topology), b, b_bar))
    return with_derivatives(ScatteringData(case, q0, theta_plus, tuple(discrete)))


def with_derivatives(data):
    """Return data with a′(z_j) and ā′(z̄_j) computed from the trace product."""
    filled = tuple(
        replace(d, a_prime=a_prime(data, j), a_bar_prime=a_bar_prime(data, j))
        for j, d in enumerate(data.discrete)
    )
    return replace(data, discrete=filled)


# =============================================================================
# TRACE FORMULA
# =============================================================================

def blaschke(data, z):
    """∏ (z − z_j)/(z − z̄_j)."""
    value = 1.0 + 0j
    for d in data.discrete:
        value *= (z - d.z) / (z - d.z_bar)
    return value


def _log_weight(data, bvals):
    w = 1.0 + data.sign * np.asarray(bvals, dtype=complex) ** 2
    scale = np.maximum(1.0, np.abs(w))
    on_cut = (w.real <= 0) & (np.abs(w.imag) <= 1e-12 * scale)
    if np.any(on_cut):
        raise LogBranch(
            f"1 {'+' if data.sign > 0 else '−'} b(ξ)² touches the negative real axis "
            f"at {int(on_cut.sum())} samples; the principal logarithm is not continuous there"
        )
    return np.log(w)


def _segments(data):
    """(parametrization, derivative, lower, upper) pieces of Σ carrying reflection."""
    refl = data.reflection
    q0 = data.q0
    pieces = []
    span = refl.line_range()

    def line(s):
        return s

    def dline(s):
        return 1.0

    def line_b(s):
        return refl.on_line(s)

    if span is not None:
        lo, hi = span
        if data.topology is CutTopology.REAL_CUT:
            pieces.append((line, dline, line_b, lo, hi))
        else:
            if lo < -q0:
                pieces.append((line, dline, line_b, lo, min(hi, -q0)))
            if hi > q0:
                pieces.append((line, dline, line_b, max(lo, q0), hi))
            inner_lo, inner_hi = max(lo, -q0), min(hi, q0)
            if inner_lo < inner_hi:
                # traversed from q0 to −q0
                pieces.append((line, dline, line_b, inner_hi, inner_lo))

    if data.topology is CutTopology.IMAGINARY_CUT:
        def circ(phi):
            return q0 * np.exp(1j * phi)

        def dcirc(phi):
            return 1j * q0 * np.exp(1j * phi)

        pieces.append((circ, dcirc, refl.on_circle, math.pi, 0.0))    # upper, clockwise
        pieces.append((circ, dcirc, refl.on_circle, -math.pi, 0.0))   # lower, anticlockwise
    return pieces


def cauchy_exponent(data, z):
    """(1/2πi) ∫_Σ log(1 ± b²)/(ξ − z) dξ; zero for reflectionless data."""
    if data.is_reflectionless:
        return 0j
    if distance_to_contour(z, data.q0, data.topology) < Config.CONTOUR_POLE_TOL:
        raise ContourPole(
            f"z = {z} lies within {Config.CONTOUR_POLE_TOL} of the continuous spectrum"
        )
    _log_weight(data, data.reflection.b)   # branch check on the raw samples

    total = 0j
    for xi, dxi, bfun, lo, hi in _segments(data):
        def integrand(s, part):
            val = _log_weight(data, bfun(s)) * dxi(s) / (xi(s) - z)
            return float(np.real(val)) if part == 0 else float(np.imag(val))

        if hi == lo:
            continue
        re_part, _ = integrate.quad(integrand, lo, hi, args=(0,), limit=Config.QUAD_LIMIT,
                                    epsabs=Config.QUAD_EPSABS, epsrel=Config.QUAD_EPSREL)
        im_part, _ = integrate.quad(integrand, lo, hi, args=(1,), limit=Config.QUAD_LIMIT,
                                    epsabs=Config.QUAD_EPSABS, epsrel=Config.QUAD_EPSREL)
        total += re_part + 1j * im_part
    return total / (2j * math.pi)


def _require_region(data, p, expected):
    if abs(p.q0 - data.q0) > 1e-14 * data.q0 or p.topology is not data.topology:
        raise DomainError("SpectralPoint q0/topology do not match the scattering data")
    tag = classify(p)
    if tag is RegionTag.CONTOUR:
        raise ContourPole(f"z = {p.z} lies on the continuous spectrum")
    if tag is not expected:
        raise DomainError(f"z = {p.z} is {tag.value}; this evaluation needs {expected.value}")


def trace_a(data, p):
    """a(z) at an upper-region SpectralPoint.

    Examples:
        reflectionless, |z| → ∞        → 1
        reflectionless sinh0, z → 0    → e^{2iθ₊}
    """
    _require_region(data, p, RegionTag.UPPER_ANALYTIC)
    return blaschke(data, p.z) * cmath.exp(cauchy_exponent(data, p.z))


def trace_a_bar(data, p):
    """ā(z) at a lower-region SpectralPoint."""
    _require_region(data, p, RegionTag.LOWER_ANALYTIC)
    return cmath.exp(-cauchy_exponent(data, p.z)) / blaschke(data, p.z)


def _check_simple(data):
    zs = data.eigenvalues
    for i in range(len(zs)):
        for m in range(i + 1, len(zs)):
            if abs(zs[i] - zs[m]) <= 1e-12 * max(1.0, abs(zs[i])):
                raise RepeatedZero(f"Eigenvalues {i} and {m} coincide at z = {zs[i]}")


def a_prime(data, j):
    """a′(z_j) from the product rule on the trace product.

    a′(z_j) = 1/(z_j − z̄_j) · ∏_{m≠j} (z_j − z_m)/(z_j − z̄_m) · e^{I(z_j)}

    Examples:
        J=1 sinh0, z₁ = q0e^{iθ₊}        → 1/(q0(e^{iθ₊} − e^{−iθ₊}))
        sinhpi pair {iq1, −iq0²/q1}, j=0 → −i(q1² + q0²)/(2q1(q1² − q0²))
    """
    _check_simple(data)
    zj = data.discrete[j].z
    value = 1.0 / (zj - data.discrete[j].z_bar)
    for m, d in enumerate(data.discrete):
        if m != j:
            value *= (zj - d.z) / (zj - d.z_bar)
    if not data.is_reflectionless:
        value *= cmath.exp(cauchy_exponent(data, zj))
    return value


def a_bar_prime(data, j):
    """ā′(z̄_j), the product-rule derivative of ā at its zero z̄_j."""
    _check_simple(data)
    zb = data.discrete[j].z_bar
    value = 1.0 / (zb - data.discrete[j].z)
    for m, d in enumerate(data.discrete):
        if m != j:
            value *= (zb - d.z_bar) / (zb - d.z)
    if not data.is_reflectionless:
        value *= cmath.exp(-cauchy_exponent(data, zb))
    return value


def a_at_origin(data):
    """lim_{z→0} a(z) for reflectionless data: ∏ z_j/z̄_j."""
    value = 1.0 + 0j
    for d in data.discrete:
        value *= d.z / d.z_bar
    return value


# =============================================================================
# CONSTRAINTS AND SYMMETRIES
# =============================================================================

@dataclass(frozen=True)
class ConstraintReport:
    """Outcome of the reflectionless product constraint."""

    product: complex
    unit: complex            # required ∏z_j / (q0^J e^{iθ₊}) up to sign
    sign: int                # which of ±unit the data satisfies
    relative_defect: float


def _constraint_unit(case, J):
    if case is SymmetryCase.SINH_ZERO:
        return 1.0 + 0j
    if case is SymmetryCase.SINH_PI:
        return 1j ** (J + 1)
    if case is SymmetryCase.SINE_PI:
        return 1j
    return 1j ** J


def validate_constraint(data):
    """Check eigenvalue placement, involution pairing and the product constraint.

    Returns:
        ConstraintReport (records which sign of the ± constraint holds)

    Raises:
        ImproperEigenvalue: z_j not strictly inside the upper region, |z_j| ≈ q0
            on a circle cut, or J = 1 for sinhpi / sine0
        ConstraintViolated: z̄_j ≠ involution(z_j), or the product fails
    """
    if not data.is_reflectionless:
        raise DomainError("validate_constraint needs reflectionless data")
    J = data.J
    circle_cut = data.topology is CutTopology.IMAGINARY_CUT
    if circle_cut and J == 1:
        raise ImproperEigenvalue(
            f"J = 1 is not allowed for case {data.case.value}: the single eigenvalue "
            f"would sit on the circle |z| = q0, which is continuous spectrum"
        )
    for j, d in enumerate(data.discrete):
        if circle_cut and abs(abs(d.z) - data.q0) <= Config.IMPROPER_EIG_TOL * data.q0:
            raise ImproperEigenvalue(f"z_{j + 1} = {d.z} lies on the circle |z| = q0")
        if distance_to_contour(d.z, data.q0, data.topology) <= Config.IMPROPER_EIG_TOL:
            raise ImproperEigenvalue(f"z_{j + 1} = {d.z} lies on the continuous spectrum")
        lam = lambda_of(d.z, data.q0, data.topology)
        if lam.imag <= 0:
            raise ImproperEigenvalue(f"z_{j + 1} = {d.z} is outside the upper analytic region")
        expected = involution_z(d.z, data.q0, data.topology)
        if abs(d.z_bar - expected) > Config.PAIRING_RTOL * max(1.0, abs(expected)):
            raise ConstraintViolated(
                f"z̄_{j + 1} = {d.z_bar} is not the involution image {expected} of z_{j + 1}"
            )

    product = complex(np.prod(data.eigenvalues)) if J else 1.0 + 0j
    unit = _constraint_unit(data.case, J)
    scale = data.q0 ** J * cmath.exp(1j * data.theta_plus)
    ratio = product / scale
    defects = {s: abs(ratio - s * unit) for s in (1, -1)}
    sign = min(defects, key=defects.get)
    if defects[sign] > Config.CONSTRAINT_RTOL:
        raise ConstraintViolated(
            f"Reflectionless constraint fails for case {data.case.value}: "
            f"∏z_j/(q0^J e^{{iθ₊}}) = {ratio:.12g}, expected ±{unit}"
        )
    logger.debug(f"Constraint holds with sign {sign:+d} (defect {defects[sign]:.2e})")
    return ConstraintReport(product, unit, sign, defects[sign])


def check_discrete_symmetry(data):
    """Max defect of b_j² = ∓1 and of the pairing b̄_j = −b_j (σ=+1) / b_j (σ=−1).

    Only meaningful at t = 0; evolution rescales b and b̄.
    """
    target = -1.0 if data.case.sigma == 1 else 1.0
    worst = 0.0
    for d in data.discrete:
        worst = max(worst, abs(d.b ** 2 - target))
        paired = -d.b if data.case.sigma == 1 else d.b
        worst = max(worst, abs(d.b_bar - paired))
    return worst


# =============================================================================
# TIME EVOLUTION
# =============================================================================

def evolution_exponent(spec, z):
    """κ(z) with b(z;t) = b(z;0)e^{κ(z)t}.

    Raises:
        KPole: Gordon law with k(z) = 0 (or 2k = β when β ≠ 0)
    """
    topology = spec.topology
    q0, alpha, beta = spec.q0, spec.alpha, spec.beta
    k = k_of(z, q0, topology)
    lam = lambda_of(z, q0, topology)
    if spec.is_gordon:
        if beta == 0.0:
            if abs(k) <= 1e-14 * max(1.0, abs(z)):
                raise KPole(f"k(z) = 0 at z = {z}: the Gordon time law has a pole")
            # α − αλ/k simplified per topology
            if topology is CutTopology.IMAGINARY_CUT:
                return 2j * alpha * q0 * q0 / (z * z - q0 * q0)
            return -2j * alpha * q0 * q0 / (z * z + q0 * q0)
        denom = 2.0 * k - beta
        if abs(denom) <= 1e-14 * max(1.0, abs(k)):
            raise KPole(f"k(z) = β/2 at z = {z}: the spatial-BC time law has a pole")
        return -1j * alpha * (2.0 * k - 2.0 * lam - beta) / denom
    return -1j * (alpha + 4.0 * lam * k - 4.0 * lam * beta)


def gordon_exponent_general(spec, z):
    """−i(α − αλ/k), the unsimplified Gordon law (used to check the fast path)."""
    k = k_of(z, spec.q0, spec.topology)
    lam = lambda_of(z, spec.q0, spec.topology)
    if k == 0:
        raise KPole(f"k(z) = 0 at z = {z}")
    return -1j * (spec.alpha - spec.alpha * lam / k)


def _check_matches(data, spec):
    if data.case is not spec.case:
        raise DomainError(
            f"Scattering data case {data.case.value} does not match the equation case "
            f"{spec.case.value}"
        )
    if abs(data.q0 - spec.q0) > 1e-12 * spec.q0:
        raise DomainError(f"Scattering data q0={data.q0} differs from spec q0={spec.q0}")


def evolve(data, t, spec):
    """Scattering data at absolute time t (a and ā are time independent).

    Examples:
        sinh0, z₁ = q0e^{iθ₊}, b(0) = δi → b(t) = δi·e^{−(iαt/cosθ₊)e^{−iθ₊}}
        t equal to data.time → unchanged
    """
    _check_matches(data, spec)
    dt = float(t) - data.time
    if dt == 0.0:
        return data
    moved = []
    for d in data.discrete:
        moved.append(replace(
            d,
            b=d.b * cmath.exp(evolution_exponent(spec, d.z) * dt),
            b_bar=d.b_bar * cmath.exp(-evolution_exponent(spec, d.z_bar) * dt),
        ))
    reflection = data.reflection
    if reflection is not None and len(reflection):
        kappas = np.array([evolution_exponent(spec, xi) for xi in reflection.xi])
        reflection = reflection.scaled(np.exp(kappas * dt))
    return replace(data, discrete=tuple(moved), reflection=reflection, time=float(t))


# =============================================================================
# JSON I/O
# =============================================================================

def _pair(c):
    return None if c is None else [float(np.real(c)), float(np.imag(c))]


def _unpair(p):
    return None if p is None else complex(p[0], p[1])


def data_to_dict(data):
    out = {
        'case': data.case.value,
        'q0': data.q0,
        'theta_plus': data.theta_plus,
        'time': data.time,
        'eigenvalues': [_pair(d.z) for d in data.discrete],
        'eigenvalues_bar': [_pair(d.z_bar) for d in data.discrete],
        'b': [_pair(d.b) for d in data.discrete],
        'b_bar': [_pair(d.b_bar) for d in data.discrete],
        'a_prime': [_pair(d.a_prime) for d in data.discrete],
        'a_bar_prime': [_pair(d.a_bar_prime) for d in data.discrete],
    }
    if data.reflection is not None and len(data.reflection):
        out['reflection'] = [
            [float(x.real), float(x.imag), float(b.real), float(b.imag)]
            for x, b in zip(data.reflection.xi, data.reflection.b)
        ]
    return out


def data_from_dict(obj):
    """Inverse of data_to_dict.  Missing eigenvalues_bar / a′ are recomputed."""
    try:
        case = SymmetryCase(obj['case'])
        q0 = float(obj['q0'])
        theta_plus = float(obj['theta_plus'])
        zs = [_unpair(p) for p in obj.get('eigenvalues', [])]
        bs = [_unpair(p) for p in obj['b']] if zs else []
        b_bars = [_unpair(p) for p in obj['b_bar']] if zs else []
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise DomainError(f"Malformed scattering data: {e}") from e
    if not (len(zs) == len(bs) == len(b_bars)):
        raise DomainError("eigenvalues, b and b_bar need equal lengths")
    topology = case.topology
    z_bars = obj.get('eigenvalues_bar') or [None] * len(zs)
    discrete = []
    for z, zb, b, bb in zip(zs, z_bars, bs, b_bars):
        zb = _unpair(zb) if zb is not None else involution_z(z, q0, topology)
        discrete.append(DiscreteEigen(z, zb, b, bb))
    reflection = None
    if obj.get('reflection'):
        arr = np.asarray(obj['reflection'], dtype=float)
        if arr.ndim != 2 or arr.shape[1] not in (3, 4):
            raise DomainError("reflection rows must be [xi, re b, im b] or [re xi, im xi, re b, im b]")
        if arr.shape[1] == 3:
            reflection = ReflectionSample(arr[:, 0], arr[:, 1] + 1j * arr[:, 2])
        else:
            reflection = ReflectionSample(arr[:, 0] + 1j * arr[:, 1], arr[:, 2] + 1j * arr[:, 3])
    data = ScatteringData(case, q0, theta_plus, tuple(discrete), reflection,
                          float(obj.get('time', 0.0)))
    a_primes = obj.get('a_prime')
    if a_primes and all(p is not None for p in a_primes):
        filled = tuple(replace(d, a_prime=_unpair(ap), a_bar_prime=_unpair(abp))
                       for d, ap, abp in zip(data.discrete, a_primes, obj['a_bar_prime']))
        return replace(data, discrete=filled)
    return with_derivatives(data)


def save_data(data, path):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(data_to_dict(data), fh, indent=2)


def load_data(path):
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"Scattering data file not found at {path}.  "
            f"Write one with ScatteringData.save_data or the CLI 'scatter' verb."
        )
    with open(path, encoding='utf-8') as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise DomainError(f"{path} is not valid JSON: {e}") from e
    return data_from_dict(obj)


def require_derivatives(data):
    for j, d in enumerate(data.discrete):
        if d.a_prime is None or d.a_bar_prime is None:
            raise MissingDerivative(f"a′/ā′ missing for eigenvalue {j + 1}; call with_derivatives")
