"""
DirectScattering.py
Jost eigenfunctions, scattering coefficients and eigenvalue search for sampled potentials
Last updated: 2026-10-19

SCATTERING PROBLEM:
    v_x = (ikJ + Q)v,  J = diag(−1, 1),  Q = [[0, q(x,t)], [r(x,t), 0]],  r = σ q(−x,−t)

BOUNDED GAUGE (integrated instead of the raw Jost solutions):
    M = φ e^{iλx}    M'  = (ikJ + Q + iλ)M,    M(−L)  = w  = (λ+k, i r₋)
    M̄ = φ̄ e^{−iλx}   M̄'  = (ikJ + Q − iλ)M̄,    M̄(−L)  = w̄  = (−i q₋, λ+k)
    N = ψ e^{−iλx}   N'  = (ikJ + Q − iλ)N,    N(L)   = v  = (−i q₊, λ+k)
    N̄ = ψ̄ e^{iλx}    N̄'  = (ikJ + Q + iλ)N̄,    N̄(L)   = v̄  = (λ+k, i r₊)

SCATTERING COEFFICIENTS (Wronskians at x = 0, where both gauges are the raw solutions):
    a = W(φ, ψ)/(2λ(λ+k))      ā = −W(φ̄, ψ̄)/(2λ(λ+k))
    b = −W(φ, ψ̄)/(2λ(λ+k))     b̄ = W(φ̄, ψ)/(2λ(λ+k))
    and a·ā − b·b̄ = 1 on Σ.

NEUMANN ORACLE:
    M(x) = w + ∫_{−L}^{x} G₋(x − s)(Q − Q₋)M ds,  G₋(u) = θ(u)[P0 + e^{2iλu}P1]
    N(x) = v + ∫_{x}^{L}  G₊(x − s)(Q − Q₊)N ds,  G₊(u) = −θ(−u)[P0′ + e^{−2iλu}P1′]
    P0 = (λI + iA₋)/(2λ), P1 = (λI − iA₋)/(2λ), A₋ = ikJ + Q₋ (primes use A₊, roles swapped)
    Before iterating, ‖Q − Q±‖₁·sup‖G±‖ is estimated; a value ≥ 1 is logged as a warning.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import integrate, optimize, signal

import Config
from Errors import (BranchPointProximity, ClusteredZeros, DegenerateNormalizer, DomainError,
                    Divergence, IntegratorFailure, NoConvergence)
from ModelConfig import AsymptoticMatrices, background, boundary_partner, validate
from Parallel import parallel_map
from ScatteringData import (DiscreteEigen, ReflectionSample, ScatteringData, with_derivatives)
from SpectralPlane import (CutTopology, RegionTag, SpectralPoint, classify, distance_to_contour,
                           involution_z, region_of)

logger = logging.getLogger(__name__)

_J = np.diag([-1.0 + 0j, 1.0 + 0j])


# =============================================================================
# POTENTIAL
# =============================================================================

@dataclass(frozen=True, eq=False)
class PotentialSample:
    """A potential q(x, t) on [−L, L] with its nonlocal partner r built in.

    q must accept numpy arrays and be safe to call from several threads.
    """

    spec: object
    q: object
    half_width: float
    tail_bound: float = Config.JOST_TAIL_TARGET

    def __post_init__(self):
        validate(self.spec)
        if self.spec.beta != 0.0:
            raise DomainError("Direct scattering assumes β = 0 backgrounds")
        if not self.half_width > 0:
            raise DomainError(f"Domain half-width L must be positive, got {self.half_width}")

    @classmethod
    def from_solution(cls, sol, half_width=None):
        """Wrap a FieldSolution; L = max(25/q0, 25/decay rate) unless given."""
        if half_width is None:
            rate = sol.decay_rate or sol.spec.q0
            half_width = Config.JOST_TAIL_EXPONENT * max(1.0 / sol.spec.q0, 1.0 / rate)
        return cls(sol.spec, sol.q, float(half_width))

    @classmethod
    def background_only(cls, spec, half_width=None):
        """Pure background: q₊ for x > 0 and q₋ for x < 0 (constant when θ₊ = θ₋)."""
        def q(x, t):
            x = np.asarray(x, dtype=float)
            return np.where(x >= 0, background(spec, '+', t), background(spec, '-', t))

        L = half_width or Config.JOST_TAIL_EXPONENT / spec.q0
        return cls(spec, q, float(L))

    @property
    def sigma(self):
        return self.spec.sigma

    def r(self, x, t):
        return self.sigma * self.q(-np.asarray(x, dtype=float), -np.asarray(t, dtype=float))

    def tail_defect(self, t, samples=16):
        """max |q − q±| over a few points beyond ±L (both tails)."""
        L = self.half_width
        xs = L * (1.0 + np.linspace(0.0, 1.0, samples))
        plus = np.abs(self.q(xs, t) - background(self.spec, '+', t))
        minus = np.abs(self.q(-xs, t) - background(self.spec, '-', t))
        return float(max(plus.max(), minus.max()))

    def check_tail(self, t=0.0):
        defect = self.tail_defect(t)
        if defect > self.tail_bound:
            logger.warning(
                f"Potential differs from its background by {defect:.2e} beyond |x| = "
                f"{self.half_width:g}; scattering data will carry that truncation error"
            )
        return defect

    def Q(self, x, t):
        return np.array([[0.0, self.q(x, t)], [self.r(x, t), 0.0]], dtype=complex)


def boundary_vectors(spec, z, t=0.0):
    """(w, w̄, v, v̄) for a spectral value z at time t."""
    p = z if isinstance(z, SpectralPoint) else SpectralPoint(z, spec.q0, spec.topology)
    k, lam = p.k, p.lam
    q_minus = complex(background(spec, '-', t))
    q_plus = complex(background(spec, '+', t))
    r_minus = complex(boundary_partner(spec, '-', t))
    r_plus = complex(boundary_partner(spec, '+', t))
    w = np.array([lam + k, 1j * r_minus])
    w_bar = np.array([-1j * q_minus, lam + k])
    v = np.array([-1j * q_plus, lam + k])
    v_bar = np.array([lam + k, 1j * r_plus])
    return w, w_bar, v, v_bar


# =============================================================================
# JOST INTEGRATION
# =============================================================================

def _point(p, z):
    if isinstance(z, SpectralPoint):
        return z
    return SpectralPoint(z, p.spec.q0, p.spec.topology)


def _check_branch(pt):
    if abs(pt.lam) <= Config.BRANCH_POINT_MIN_LAMBDA:
        raise BranchPointProximity(f"z = {pt.z} is within {Config.BRANCH_POINT_MIN_LAMBDA} of a branch point")


def _integrate(p, pt, t, shift, y0, x_start, x_end, dense=True):
    k = pt.k

    def rhs(x, y):
        qx = p.q(x, t)
        rx = p.r(x, t)
        return np.array([(-1j * k + shift) * y[0] + qx * y[1],
                         rx * y[0] + (1j * k + shift) * y[1]])

    sol = integrate.solve_ivp(
        rhs,
        (x_start, x_end),
        np.asarray(y0, dtype=complex),
        method=Config.JOST_METHOD,
        rtol=Config.JOST_RTOL,
        atol=Config.JOST_ATOL,
        dense_output=dense,
    )
    if not sol.success:
        raise IntegratorFailure(f"Jost integration failed at z = {pt.z}: {sol.message}")
    return sol


@dataclass(frozen=True, eq=False)
class JostPair:
    """Bounded-gauge Jost solutions on [−L, L] at one (z, t)."""

    point: SpectralPoint
    t: float
    M: object
    M_bar: object
    N: object
    N_bar: object
    vectors: tuple

    @property
    def lam(self):
        return self.point.lam

    def phi(self, x):
        return self.M.sol(x) * np.exp(-1j * self.lam * np.asarray(x))

    def psi(self, x):
        return self.N.sol(x) * np.exp(1j * self.lam * np.asarray(x))

    def at_origin(self):
        """(φ, φ̄, ψ, ψ̄) at x = 0."""
        return self.M.sol(0.0), self.M_bar.sol(0.0), self.N.sol(0.0), self.N_bar.sol(0.0)


def integrate_jost(p, z, t=0.0):
    """All four bounded-gauge Jost solutions at z, with dense output on [−L, L].

    Raises:
        BranchPointProximity: |λ(z)| below BRANCH_POINT_MIN_LAMBDA
        IntegratorFailure: solver step underflow
    """
    pt = _point(p, z)
    _check_branch(pt)
    L = p.half_width
    lam = pt.lam
    w, w_bar, v, v_bar = boundary_vectors(p.spec, pt, t)
    M = _integrate(p, pt, t, 1j * lam, w, -L, L)
    M_bar = _integrate(p, pt, t, -1j * lam, w_bar, -L, L)
    N = _integrate(p, pt, t, -1j * lam, v, L, -L)
    N_bar = _integrate(p, pt, t, 1j * lam, v_bar, L, -L)
    return JostPair(pt, float(t), M, M_bar, N, N_bar, (w, w_bar, v, v_bar))


def wronskian(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _normalizer(pt):
    norm = 2.0 * pt.lam * (pt.lam + pt.k)
    if abs(norm) <= Config.BRANCH_POINT_MIN_LAMBDA * max(1.0, abs(pt.z)):
        raise DegenerateNormalizer(f"2λ(λ+k) vanishes at z = {pt.z}")
    return norm


# =============================================================================
# SCATTERING COEFFICIENTS
# =============================================================================

@dataclass(frozen=True)
class WronskianData:
    """a, ā, b, b̄ at one spectral value."""

    z: complex
    a: complex
    a_bar: complex
    b: complex
    b_bar: complex

    @property
    def unitarity_defect(self):
        return abs(self.a * self.a_bar - self.b * self.b_bar - 1.0)


def scattering_coeffs(p, z, t=0.0, jost=None):
    """Scattering coefficients from Wronskians at x = 0.

    Raises:
        DegenerateNormalizer: 2λ(λ+k) ≈ 0

    Examples:
        constant background → a = 1, b = 0
    """
    pt = _point(p, z)
    norm = _normalizer(pt)
    jost = jost or integrate_jost(p, pt, t)
    phi, phi_bar, psi, psi_bar = jost.at_origin()
    return WronskianData(
        z=pt.z,
        a=wronskian(phi, psi) / norm,
        a_bar=-wronskian(phi_bar, psi_bar) / norm,
        b=-wronskian(phi, psi_bar) / norm,
        b_bar=wronskian(phi_bar, psi) / norm,
    )


def a_value(p, z, t=0.0):
    """a(z) alone: integrates only M (forward) and N (backward) to x = 0."""
    pt = _point(p, z)
    _check_branch(pt)
    norm = _normalizer(pt)
    w, _, v, _ = boundary_vectors(p.spec, pt, t)
    L = p.half_width
    M0 = _integrate(p, pt, t, 1j * pt.lam, w, -L, 0.0, dense=False).y[:, -1]
    N0 = _integrate(p, pt, t, -1j * pt.lam, v, L, 0.0, dense=False).y[:, -1]
    return wronskian(M0, N0) / norm


def a_bar_value(p, z, t=0.0):
    pt = _point(p, z)
    _check_branch(pt)
    norm = _normalizer(pt)
    _, w_bar, _, v_bar = boundary_vectors(p.spec, pt, t)
    L = p.half_width
    M0 = _integrate(p, pt, t, -1j * pt.lam, w_bar, -L, 0.0, dense=False).y[:, -1]
    N0 = _integrate(p, pt, t, 1j * pt.lam, v_bar, L, 0.0, dense=False).y[:, -1]
    return -wronskian(M0, N0) / norm


def wronskian_drift(jost, samples=201):
    """max_x |W(M, M̄)(x) − 2λ(λ+k)| / |2λ(λ+k)| (x-independence of the Wronskian)."""
    L = jost.M.sol.t_max
    xs = np.linspace(-L, L, samples)
    W = wronskian(jost.M.sol(xs), jost.M_bar.sol(xs))
    norm = _normalizer(jost.point)
    return float(np.max(np.abs(W - norm)) / abs(norm))


def eigenfunction_symmetry_defect(p, jost, samples=201):
    """max_x |N(x) − R·M(−x)| / max|M| at t = 0.

    R = [[0, −1], [1, 0]] for σ = +1 and the swap [[0, 1], [1, 0]] for σ = −1.
    """
    if jost.t != 0.0:
        raise DomainError("The eigenfunction symmetry holds at t = 0")
    L = jost.M.sol.t_max
    xs = np.linspace(-L, L, samples)
    if p.sigma == 1:
        R = np.array([[0.0, -1.0], [1.0, 0.0]])
    else:
        R = np.array([[0.0, 1.0], [1.0, 0.0]])
    M = jost.M.sol(-xs)
    N = jost.N.sol(xs)
    return float(np.max(np.abs(N - R @ M)) / max(np.max(np.abs(M)), 1e-300))


def involution_symmetry_defect(p, z, t=0.0):
    """|a(involution(z)) − s·e^{2iθ₊}·ā(z)| at a lower-region z, s the case sign."""
    pt = _point(p, z)
    if classify(pt) is not RegionTag.LOWER_ANALYTIC:
        raise DomainError(f"z = {pt.z} must lie in the lower analytic region")
    image = involution_z(pt.z, pt.q0, pt.topology)
    expected = p.spec.case.origin_limit(p.spec.theta_plus) * a_bar_value(p, pt, t)
    return abs(a_value(p, image, t) - expected)


# =============================================================================
# CONTOUR SAMPLING
# =============================================================================

def contour_points(q0, topology, n=Config.CONTOUR_SAMPLES):
    """Sample points on Σ away from branch points and the origin.

    RealCut: n points on each half-line; ImaginaryCut additionally n points
    on each semicircle of |z| = q0.
    """
    u = np.linspace(-2.5, 2.5, n)
    line = q0 * np.exp(u)
    line = line[np.abs(line - q0) > 1e-3 * q0]
    pts = [line, -line]
    if topology is CutTopology.IMAGINARY_CUT:
        line = line[line > q0 * (1 + 1e-3)]
        pts = [line, -line]
        phi = np.linspace(0.0, math.pi, n + 2)[1:-1]
        phi = phi[np.abs(phi - math.pi / 2) > 1e-3]
        pts += [q0 * np.exp(1j * phi), q0 * np.exp(-1j * phi)]
    return np.concatenate(pts).astype(complex)


def sample_contour(p, t=0.0, xi=None):
    """a, ā, b, b̄ and the unitarity defect at contour points, as a DataFrame."""
    if xi is None:
        xi = contour_points(p.spec.q0, p.spec.topology)
    xi = np.asarray(xi, dtype=complex)
    rows = parallel_map(lambda z: scattering_coeffs(p, z, t), list(xi))
    return pd.DataFrame({
        're_xi': xi.real,
        'im_xi': xi.imag,
        're_a': [r.a.real for r in rows],
        'im_a': [r.a.imag for r in rows],
        're_a_bar': [r.a_bar.real for r in rows],
        'im_a_bar': [r.a_bar.imag for r in rows],
        're_b': [r.b.real for r in rows],
        'im_b': [r.b.imag for r in rows],
        're_b_bar': [r.b_bar.real for r in rows],
        'im_b_bar': [r.b_bar.imag for r in rows],
        'unitarity_defect': [r.unitarity_defect for r in rows],
    })


# =============================================================================
# EIGENVALUE SEARCH
# =============================================================================

@dataclass(frozen=True)
class SearchRegion:
    """Annulus r_min < |z| < r_max intersected with the upper analytic region."""

    r_min: float
    r_max: float
    margin: float = Config.EIG_CONTOUR_MARGIN

    @classmethod
    def default(cls, q0):
        return cls(Config.EIG_R_MIN_FACTOR * q0, Config.EIG_R_MAX_FACTOR * q0)

    def contains(self, z, q0, topology):
        return (self.r_min < abs(z) < self.r_max
                and region_of(z, q0, topology) is RegionTag.UPPER_ANALYTIC
                and distance_to_contour(z, q0, topology) > self.margin)


def _scan_grid(region, q0, topology):
    radii = np.geomspace(region.r_min, region.r_max, Config.EIG_GRID_RADII)
    phis = np.linspace(0.0, math.pi, Config.EIG_GRID_ANGLES + 2)[1:-1]
    if topology is CutTopology.REAL_CUT:
        return radii[:, None] * np.exp(1j * phis)[None, :]
    # D⁺: upper half outside the circle, lower half inside it
    upper = radii[radii > q0][:, None] * np.exp(1j * phis)[None, :]
    lower = radii[radii < q0][:, None] * np.exp(-1j * phis)[None, :]
    return upper, lower


def _local_minima(values):
    """Indices of interior-or-edge local minima of a 2-D array."""
    padded = np.pad(values, 1, mode='constant', constant_values=np.inf)
    centre = padded[1:-1, 1:-1]
    is_min = np.ones_like(centre, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neighbour = padded[1 + di:padded.shape[0] - 1 + di, 1 + dj:padded.shape[1] - 1 + dj]
            is_min &= centre <= neighbour
    return np.argwhere(is_min)


def _refine(p, z0, t):
    step = 1e-3 * max(abs(z0), p.spec.q0)
    try:
        root, info = optimize.newton(lambda z: a_value(p, z, t), z0, x1=z0 + step,
                                     tol=1e-12, maxiter=Config.EIG_SECANT_MAXITER,
                                     full_output=True, disp=False)
    except (ArithmeticError, BranchPointProximity, DegenerateNormalizer, IntegratorFailure):
        return None
    if not info.converged:
        return None
    return complex(root)


def find_eigenvalues(p, t=0.0, region=None):
    """Zeros of a(z) in the search region, sorted by argument.

    Coarse log-polar scan of |a|, local minima refined by the secant method.

    Raises:
        ClusteredZeros: two distinct refined roots closer than EIG_CLUSTER_TOL
        NoConvergence: a deep minimum (|a| below 1e-2) failed to refine

    Examples:
        sinh dark 1-soliton (q0=2, θ₊=π/3) → [2e^{iπ/3}]
        Case 2 two-soliton (q0=2, q1=4)     → {4i, −i}
    """
    q0, topology = p.spec.q0, p.spec.topology
    region = region or SearchRegion.default(q0)
    grids = _scan_grid(region, q0, topology)
    if not isinstance(grids, tuple):
        grids = (grids,)

    candidates = []
    for grid in grids:
        if grid.size == 0:
            continue
        values = np.array(parallel_map(lambda z: abs(a_value(p, z, t)), list(grid.ravel())))
        values = values.reshape(grid.shape)
        for i, j in _local_minima(values):
            candidates.append((grid[i, j], values[i, j]))

    roots = []
    for z0, depth in candidates:
        root = _refine(p, z0, t)
        if root is None or not region.contains(root, q0, topology):
            if depth < 1e-2:
                raise NoConvergence(f"Secant refinement from z = {z0} (|a| = {depth:.2e}) did not converge")
            continue
        residual = abs(a_value(p, root, t))
        if residual > Config.EIG_TOL * 1e3:
            logger.debug(f"Discarding candidate {root} with |a| = {residual:.2e}")
            continue
        if residual > Config.EIG_TOL:
            logger.warning(f"Eigenvalue {root} refined to |a| = {residual:.2e} only")
        if all(abs(root - r) > Config.EIG_DEDUP_TOL * max(1.0, abs(r)) for r in roots):
            roots.append(root)

    for i in range(len(roots)):
        for m in range(i + 1, len(roots)):
            if abs(roots[i] - roots[m]) <= Config.EIG_CLUSTER_TOL:
                raise ClusteredZeros(f"Zeros {roots[i]} and {roots[m]} are closer than "
                                     f"{Config.EIG_CLUSTER_TOL}", roots=tuple(roots))
    roots.sort(key=lambda z: (math.atan2(z.imag, z.real), abs(z)))
    logger.info(f"Located {len(roots)} eigenvalue(s) of a(z) at t={t:g}")
    return roots


def extract_norming(p, z, t=0.0, upper=True):
    """b(z_j) from M = b e^{2iλx} N on [−L, 0] (ā-side: M̄ = b̄ e^{−2iλx} N̄).

    Componentwise ratios are averaged over points where |N| exceeds
    NORMING_WINDOW_FRACTION of its maximum.
    """
    pt = _point(p, z)
    _check_branch(pt)
    w, w_bar, v, v_bar = boundary_vectors(p.spec, pt, t)
    L = p.half_width
    lam = pt.lam
    if upper:
        left = _integrate(p, pt, t, 1j * lam, w, -L, 0.0)
        right = _integrate(p, pt, t, -1j * lam, v, L, -L)
        factor = 2j * lam
    else:
        left = _integrate(p, pt, t, -1j * lam, w_bar, -L, 0.0)
        right = _integrate(p, pt, t, 1j * lam, v_bar, L, -L)
        factor = -2j * lam
    xs = np.linspace(-L, 0.0, 401)
    num = left.sol(xs)
    den = right.sol(xs) * np.exp(factor * xs)
    ratios = []
    for comp in range(2):
        mag = np.abs(right.sol(xs)[comp])
        keep = mag > Config.NORMING_WINDOW_FRACTION * mag.max()
        keep &= np.abs(den[comp]) > 0
        if np.any(keep):
            ratios.append(num[comp][keep] / den[comp][keep])
    if not ratios:
        raise NoConvergence(f"No usable window for the norming constant at z = {pt.z}")
    return complex(np.mean(np.concatenate(ratios)))


def scatter_potential(p, t=0.0, case=None, region=None, contour=None):
    """ScatteringData for a sampled potential (eigenvalues, norming constants, b on Σ).

    Contour samples are kept only if max |b(ξ)| exceeds REFLECTIONLESS_TOL,
    otherwise the data is reflectionless.
    """
    case = case or p.spec.case
    if case is not p.spec.case:
        raise DomainError(f"Case {case.value} does not match the potential's case {p.spec.case.value}")
    p.check_tail(t)
    zs = find_eigenvalues(p, t, region)
    topology = case.topology
    discrete = []
    for z in zs:
        z_bar = involution_z(z, p.spec.q0, topology)
        discrete.append(DiscreteEigen(z, z_bar, extract_norming(p, z, t, upper=True),
                                      extract_norming(p, z_bar, t, upper=False)))
    reflection = None
    if contour is not False:
        frame = sample_contour(p, t, contour)
        b = frame['re_b'].to_numpy() + 1j * frame['im_b'].to_numpy()
        if np.max(np.abs(b)) > Config.REFLECTIONLESS_TOL:
            xi = frame['re_xi'].to_numpy() + 1j * frame['im_xi'].to_numpy()
            reflection = ReflectionSample(xi, b)
            logger.info(f"Potential is not reflectionless: max |b| = {np.max(np.abs(b)):.2e}")
    data = ScatteringData(case, p.spec.q0, p.spec.theta_plus, tuple(discrete), reflection, float(t))
    return with_derivatives(data)


# =============================================================================
# NEUMANN-SERIES ORACLE
# =============================================================================

def _projectors(A, lam):
    eye = np.eye(2, dtype=complex)
    return (lam * eye + 1j * A) / (2.0 * lam), (lam * eye - 1j * A) / (2.0 * lam)


def green_minus(spec, z, s, t=0.0):
    """G₋(s) for an array s: zero for s < 0, P0 + e^{2iλs}P1 otherwise. Shape (n, 2, 2)."""
    pt = z if isinstance(z, SpectralPoint) else SpectralPoint(z, spec.q0, spec.topology)
    A = 1j * pt.k * _J + AsymptoticMatrices(spec).Q_minus(t)
    P0, P1 = _projectors(A, pt.lam)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    G = P0[None] + np.exp(2j * pt.lam * s)[:, None, None] * P1[None]
    return np.where((s >= 0)[:, None, None], G, 0.0)


def green_plus(spec, z, s, t=0.0):
    """G₊(s): zero for s > 0, −[P0′ + e^{−2iλs}P1′] otherwise."""
    pt = z if isinstance(z, SpectralPoint) else SpectralPoint(z, spec.q0, spec.topology)
    A = 1j * pt.k * _J + AsymptoticMatrices(spec).Q_plus(t)
    P1p, P0p = _projectors(A, pt.lam)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    G = -(P0p[None] + np.exp(-2j * pt.lam * s)[:, None, None] * P1p[None])
    return np.where((s <= 0)[:, None, None], G, 0.0)


@dataclass(frozen=True, eq=False)
class NeumannResult:
    """M on [−L, 0] and N on [0, L] from the Neumann iteration."""

    x_minus: np.ndarray
    M: np.ndarray
    x_plus: np.ndarray
    N: np.ndarray
    iterations: int
    converged: bool
    last_change: float = field(default=0.0)
    contraction: float = field(default=0.0)


def _green_sup(P0, P1, lam, u):
    """max over u of the spectral norm of P0 + e^{2iλu}P1."""
    G = P0[None] + np.exp(2j * lam * u)[:, None, None] * P1[None]
    return float(np.max(np.linalg.norm(G, ord=2, axis=(1, 2))))


def contraction_estimate(dq, P0, P1, lam, h):
    """‖Q − Q±‖₁ · sup‖G±‖ on one half-line grid.

    dq holds the (q, r) deviations in grid order; the off-diagonal matrix norm
    is max(|dq|, |dr|).
    """
    l1 = float(integrate.trapezoid(np.max(np.abs(dq), axis=1), dx=h))
    u = h * np.arange(dq.shape[0])
    return l1 * _green_sup(P0, P1, lam, u)


def _sweep(F, P0, P1, rho, h, base):
    """base + P0·∫F + P1·∫e^{2iλ(x−s)}F along grid order (trapezoid, recursive)."""
    I0 = integrate.cumulative_trapezoid(F, dx=h, axis=0, initial=0.0)
    g = np.zeros_like(F)
    g[1:] = 0.5 * h * (rho * F[:-1] + F[1:])
    I1 = signal.lfilter([1.0], [1.0, -rho], g, axis=0)
    return base[None, :] + I0 @ P0.T + I1 @ P1.T


def neumann_oracle(p, z, t=0.0, n_iter=Config.NEUMANN_MAX_ITER, h=Config.NEUMANN_STEP):
    """Fixed-point iteration of the Green's-function integral equations.

    Raises:
        Divergence: an iterate grows beyond NEUMANN_BLOWUP × |w|
    """
    pt = _point(p, z)
    _check_branch(pt)
    spec = p.spec
    lam = pt.lam
    L = p.half_width
    w, _, v, _ = boundary_vectors(spec, pt, t)
    mats = AsymptoticMatrices(spec)
    A_minus = 1j * pt.k * _J + mats.Q_minus(t)
    A_plus = 1j * pt.k * _J + mats.Q_plus(t)
    P0, P1 = _projectors(A_minus, lam)
    P1p, P0p = _projectors(A_plus, lam)
    n = int(round(L / h)) + 1
    x_minus = np.linspace(-L, 0.0, n)
    x_plus = np.linspace(0.0, L, n)
    hm = x_minus[1] - x_minus[0]
    rho = np.exp(2j * lam * hm)
    # N sweep runs from +L down to 0
    x_back = x_plus[::-1]

    dq_m = np.stack([p.q(x_minus, t) - mats.Q_minus(t)[0, 1], p.r(x_minus, t) - mats.Q_minus(t)[1, 0]], axis=1)
    dq_p = np.stack([p.q(x_back, t) - mats.Q_plus(t)[0, 1], p.r(x_back, t) - mats.Q_plus(t)[1, 0]], axis=1)

    def apply(dq, Y):
        # (Q − Q±)Y with Q off-diagonal: (dq·Y₂, dr·Y₁)
        return np.stack([dq[:, 0] * Y[:, 1], dq[:, 1] * Y[:, 0]], axis=1)

    contraction = max(contraction_estimate(dq_m, P0, P1, lam, hm),
                      contraction_estimate(dq_p, P0p, P1p, lam, hm))
    if contraction >= 1.0:
        logger.warning(
            f"Neumann contraction estimate ‖Q − Q±‖₁·‖G‖ = {contraction:.3g} ≥ 1 at z = {pt.z}; "
            f"the iteration may converge slowly or diverge"
        )

    M = np.tile(w, (n, 1))
    N = np.tile(v, (n, 1))
    scale = max(np.max(np.abs(w)), np.max(np.abs(v)))
    change = np.inf
    for it in range(1, n_iter + 1):
        M_new = _sweep(apply(dq_m, M), P0, P1, rho, hm, w)
        N_new = v[None, :] - (_sweep(apply(dq_p, N), P0p, P1p, rho, hm, np.zeros(2)))
        change = max(np.max(np.abs(M_new - M)), np.max(np.abs(N_new - N))) / scale
        M, N = M_new, N_new
        norm = max(np.max(np.abs(M)), np.max(np.abs(N)))
        if not np.isfinite(norm) or norm > Config.NEUMANN_BLOWUP * scale:
            raise Divergence(f"Neumann iterates diverge at z = {pt.z} (iteration {it})")
        if change <= Config.NEUMANN_TOL:
            return NeumannResult(x_minus, M, x_plus, N[::-1], it, True, change, contraction)
    logger.warning(f"Neumann iteration at z = {pt.z} stopped after {n_iter} steps, change {change:.2e}")
    return NeumannResult(x_minus, M, x_plus, N[::-1], n_iter, False, change, contraction)


def neumann_deviation(result, jost):
    """sup |M_neumann − M_ode| on [−L, 0] and |N_neumann − N_ode| on [0, L]."""
    dm = np.max(np.abs(result.M - jost.M.sol(result.x_minus).T))
    dn = np.max(np.abs(result.N - jost.N.sol(result.x_plus).T))
    return float(max(dm, dn))
