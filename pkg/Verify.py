"""
Verify.py
Finite-difference and quadrature certification of field solutions
Last updated: 2026-10-19

CHECKS:
    residual_gordon       q_xt + 2 s q = 0           normalized by q0·max(1, |α|)
    residual_nls          i q_t − q_xx + 2σ q² q̃ = 0  normalized by q0³, q̃ = q(−x, −t)
    check_s_consistency   closed-form s versus σ∫_x^∞ ∂t(q q̃) dx' (panel rows plus adaptive
                          spot checks); whole-line integral;
                          s(−x, −t) = s(x, t)
    check_boundary        |q(±X, t) − q± e^{iβ(±X)}| and the fitted exponential decay rate
    certify_singular_lines   zero set of the (scaled) denominator versus declared lines
    certify_denominator      min of the scaled denominator versus its certified floor

STENCILS (4th order, step h = FD_STEP):
    f'  ≈ [1, −8, 0, 8, −1]/(12h)
    f'' ≈ [−1, 16, −30, 16, −1]/(12h²)
    q_xt as the tensor product of two first-derivative stencils

RICHARDSON FLAG:
    Halving h must cut the sup residual by RICHARDSON_FACTOR (8×) unless the
    residual is already at the roundoff floor 10·ε·max|q|·(stencil weight)/h^n.
"""

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import integrate, optimize

import Config
from Errors import AsymmetricGrid, DomainError, GridTooCoarse
from Parallel import parallel_map

logger = logging.getLogger(__name__)

_D1 = {-2: 1.0, -1: -8.0, 1: 8.0, 2: -1.0}
_D2 = {-2: -1.0, -1: 16.0, 0: -30.0, 1: 16.0, 2: -1.0}
_EPS = np.finfo(float).eps


# =============================================================================
# GRID
# =============================================================================

@dataclass(frozen=True)
class Grid:
    """Tensor grid [x_lo, x_hi] × [t_lo, t_hi] with steps hx, ht."""

    x_lo: float
    x_hi: float
    t_lo: float
    t_hi: float
    hx: float
    ht: float
    exclusion_margin: float = None

    def __post_init__(self):
        if not (self.hx > 0 and self.ht > 0):
            raise DomainError(f"Grid steps must be positive, got hx={self.hx}, ht={self.ht}")
        if not (self.x_hi > self.x_lo and self.t_hi >= self.t_lo):
            raise DomainError("Grid ranges must satisfy lo < hi")
        minimum = 3.0 * max(self.hx, self.ht)
        if self.exclusion_margin is None:
            object.__setattr__(self, 'exclusion_margin', max(Config.EXCLUSION_MARGIN, minimum))
        elif self.exclusion_margin < minimum:
            raise DomainError(
                f"exclusion_margin {self.exclusion_margin} must be at least 3·max(hx, ht) = {minimum}"
            )

    @classmethod
    def parse(cls, text, exclusion_margin=None):
        """'lo:hi:step,lo:hi:step' for x then t.

        Examples:
            '-6:6:0.01,-4:4:0.05' → x ∈ [−6, 6] step 0.01, t ∈ [−4, 4] step 0.05
        """
        try:
            xpart, tpart = text.split(',')
            x_lo, x_hi, hx = (float(v) for v in xpart.split(':'))
            t_lo, t_hi, ht = (float(v) for v in tpart.split(':'))
        except ValueError as e:
            raise DomainError(f"Grid {text!r} is not 'lo:hi:step,lo:hi:step'") from e
        return cls(x_lo, x_hi, t_lo, t_hi, hx, ht, exclusion_margin)

    @staticmethod
    def _axis(lo, hi, h):
        n = int(round((hi - lo) / h)) + 1
        return np.linspace(lo, lo + (n - 1) * h, n)

    def xs(self):
        return self._axis(self.x_lo, self.x_hi, self.hx)

    def ts(self):
        return self._axis(self.t_lo, self.t_hi, self.ht)

    def mesh(self):
        """(X, T) with shape (len(ts), len(xs))."""
        return np.meshgrid(self.xs(), self.ts())

    @property
    def symmetric(self):
        tol = 1e-12 * max(1.0, abs(self.x_hi), abs(self.t_hi))
        xs, ts = self.xs(), self.ts()
        return (abs(self.x_lo + self.x_hi) <= tol and abs(self.t_lo + self.t_hi) <= tol
                and np.allclose(xs, -xs[::-1], atol=tol) and np.allclose(ts, -ts[::-1], atol=tol))

    @property
    def cell(self):
        return math.hypot(self.hx, self.ht)

    def to_dict(self):
        return {'x': [self.x_lo, self.x_hi, self.hx], 't': [self.t_lo, self.t_hi, self.ht],
                'exclusion_margin': self.exclusion_margin}


def default_grid():
    return Grid.parse(Config.DEFAULT_GRID)


# =============================================================================
# REPORT
# =============================================================================

@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ''


@dataclass
class VerificationReport:
    """Named checks with tolerances; the verdict passes only if every check does."""

    label: str
    checks: list = field(default_factory=list)

    def add(self, name, value, tolerance, passed=None, detail=''):
        value = float(value)
        if passed is None:
            passed = bool(np.isfinite(value) and value <= tolerance)
        self.checks.append(CheckResult(name, value, float(tolerance), bool(passed), detail))
        return self

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c.value
        return None

    @property
    def residual_sup(self):
        return self.get('residual_sup')

    @property
    def residual_l2(self):
        return self.get('residual_l2')

    @property
    def boundary_defect(self):
        return self.get('boundary_defect')

    @property
    def symmetry_defect(self):
        return self.get('s_symmetry')

    @property
    def singular_line_agreement(self):
        return self.get('singular_line_agreement')

    @property
    def verdict(self):
        return all(c.passed for c in self.checks)

    def to_frame(self):
        return pd.DataFrame([vars(c) for c in self.checks],
                            columns=['name', 'value', 'tolerance', 'passed', 'detail'])

    def to_dict(self):
        return {
            'label': self.label,
            'verdict': 'pass' if self.verdict else 'fail',
            'checks': [vars(c) for c in self.checks],
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, default=float)

    def table(self):
        lines = [f"{self.label}"]
        for c in self.checks:
            mark = '✅' if c.passed else '❌'
            lines.append(f"  {mark} {c.name:<26} {c.value:>12.3e}  (tol {c.tolerance:.1e})  {c.detail}")
        lines.append(f"  verdict: {'pass' if self.verdict else 'fail'}")
        return '\n'.join(lines)


# =============================================================================
# MASKS AND STENCILS
# =============================================================================

def exclusion_mask(sol, X, T, margin):
    """True where a point is farther than margin from every declared singular line."""
    keep = np.ones(X.shape, dtype=bool)
    for line in sol.singular_lines:
        keep &= line.distance(X, T) > margin
    return keep


def mixed_derivative(f, X, T, h):
    """q_xt by the tensor-product 4th-order stencil."""
    total = np.zeros(X.shape, dtype=complex)
    for i, wi in _D1.items():
        for j, wj in _D1.items():
            total += wi * wj * f(X + i * h, T + j * h)
    return total / (144.0 * h * h)


def first_derivative_t(f, X, T, h):
    total = np.zeros(X.shape, dtype=complex)
    for j, wj in _D1.items():
        total += wj * f(X, T + j * h)
    return total / (12.0 * h)


def second_derivative_x(f, X, T, h):
    total = np.zeros(X.shape, dtype=complex)
    for i, wi in _D2.items():
        total += wi * f(X + i * h, T)
    return total / (12.0 * h * h)


def _sup_l2(values, mask):
    picked = np.abs(values[mask])
    picked = picked[np.isfinite(picked)]
    if picked.size == 0:
        return float('nan'), float('nan')
    return float(picked.max()), float(np.sqrt(np.mean(picked ** 2)))


def _richardson(report, sup_h, sup_half, floor):
    """Record the h → h/2 reduction; at the roundoff floor the check passes outright."""
    if sup_h <= max(floor, Config.NOISE_FLOOR):
        report.add('richardson', sup_h, max(floor, Config.NOISE_FLOOR), True, 'at roundoff floor')
        return
    ratio = sup_h / max(sup_half, 1e-300)
    if ratio < Config.RICHARDSON_FACTOR:
        logger.warning(f"Residual fell only by {ratio:.2f} under h → h/2 for {report.label}; "
                       f"expected at least {Config.RICHARDSON_FACTOR:g}")
    report.add('richardson', ratio, Config.RICHARDSON_FACTOR, ratio >= Config.RICHARDSON_FACTOR,
               f'sup(h)/sup(h/2) = {ratio:.2f}')


def _tolerance(sol):
    if sol.id.family.is_two or sol.singular or sol.spec.beta != 0.0 or sol.point_singularities:
        return Config.TOL_RESIDUAL_TWO
    return Config.TOL_RESIDUAL_ONE


# =============================================================================
# s BY QUADRATURE
# =============================================================================

def _product_dt(sol, x, t):
    """∂t[q(x,t) q(−x,−t)], analytic when the family provides q_t."""
    x = np.asarray(x, dtype=float)
    if sol.eval_q_t is not None:
        tt = np.full(x.shape, float(t))
        return (sol.eval_q_t(x, tt) * sol.eval_q(-x, -tt)
                - sol.eval_q(x, tt) * sol.eval_q_t(-x, -tt))
    h = Config.S_DT_REL_STEP * max(1.0, abs(t))
    up = sol.eval_q(x, np.full(x.shape, t + h)) * sol.eval_q(-x, np.full(x.shape, -t - h))
    down = sol.eval_q(x, np.full(x.shape, t - h)) * sol.eval_q(-x, np.full(x.shape, -t + h))
    return (up - down) / (2.0 * h)


def _far_limit(sol, x_max):
    rate = sol.decay_rate or sol.spec.q0
    return max(x_max, 0.0) + math.log(1.0 / Config.S_TAIL_TARGET) / rate, rate


def s_by_quadrature(sol, x, t):
    """s(x, t) at one point by adaptive quadrature (scipy quad) plus a tail estimate."""
    x_far, rate = _far_limit(sol, x)
    sigma = sol.spec.sigma

    def part(fn):
        val, _ = integrate.quad(lambda u: fn(_product_dt(sol, np.array([u]), t)[0]), x, x_far,
                                limit=Config.QUAD_LIMIT, epsabs=Config.QUAD_EPSABS,
                                epsrel=Config.QUAD_EPSREL)
        return val

    value = part(np.real) + 1j * part(np.imag)
    # beyond x_far the integrand decays like e^{-rate·(u − x_far)}
    tail = complex(_product_dt(sol, np.array([x_far]), t)[0]) / rate
    if abs(tail) > Config.S_TAIL_TARGET * 10:
        logger.debug(f"s quadrature tail estimate {abs(tail):.2e} at x={x:g}, t={t:g}")
    return sigma * (value + tail)


def s_profile(sol, xs, t, x_far=None):
    """s along a row of x values at fixed t.

    Panel Gauss-Legendre on the grid intervals plus refined panels out to
    x_far, summed cumulatively from the right.
    """
    xs = np.asarray(xs, dtype=float)
    order = np.argsort(xs)
    sorted_x = xs[order]
    far, rate = _far_limit(sol, sorted_x[-1])
    x_far = far if x_far is None else x_far
    step = min(0.25, 0.5 / rate)
    n_tail = max(1, int(math.ceil((x_far - sorted_x[-1]) / step)))
    breaks = np.unique(np.concatenate([sorted_x, np.linspace(sorted_x[-1], x_far, n_tail + 1)]))
    wide = np.diff(breaks) > step
    if np.any(wide):
        extra = [np.linspace(a, b, int(math.ceil((b - a) / step)) + 1)[1:-1]
                 for a, b in zip(breaks[:-1][wide], breaks[1:][wide])]
        breaks = np.unique(np.concatenate([breaks] + extra))

    nodes, weights = np.polynomial.legendre.leggauss(Config.S_PANEL_NODES)
    lo, hi = breaks[:-1], breaks[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    vals = _product_dt(sol, pts.ravel(), t).reshape(pts.shape)
    panels = np.sum(vals * weights[None, :], axis=1) * half
    from_right = np.concatenate([np.cumsum(panels[::-1])[::-1], [0.0]])
    index = np.searchsorted(breaks, sorted_x)
    out = np.empty(xs.size, dtype=complex)
    out[order] = sol.spec.sigma * from_right[index]
    return out


def s_row(sol, xs, t):
    """s along a row, integrating only over x' ≥ |x|.

    Points with x < 0 use s(x, t) = s(−x, −t), so no ray crosses x = 0.
    """
    xs = np.asarray(xs, dtype=float)
    out = np.empty(xs.size, dtype=complex)
    right = xs >= 0
    if np.any(right):
        out[right] = s_profile(sol, xs[right], t)
    if np.any(~right):
        out[~right] = s_profile(sol, -xs[~right], -t)
    return out


def _s_grid(sol, grid):
    if sol.eval_s is not None:
        X, T = grid.mesh()
        return sol.s(X, T)
    xs = grid.xs()
    rows = parallel_map(lambda t: s_row(sol, xs, t), list(grid.ts()))
    return np.array(rows)


# =============================================================================
# RESIDUALS
# =============================================================================

def residual_gordon(sol, grid, h=Config.FD_STEP, strict=False):
    """q_xt + 2 s q on the grid, off the declared singular lines.

    Raises:
        DomainError: sol is not a Gordon solution
        GridTooCoarse: strict and the Richardson reduction fails
    """
    if not sol.is_gordon:
        raise DomainError("residual_gordon needs a sine- or sinh-Gordon solution")
    X, T = grid.mesh()
    mask = exclusion_mask(sol, X, T, grid.exclusion_margin)
    s = _s_grid(sol, grid)
    q = sol.q(X, T)
    norm = sol.spec.q0 * max(1.0, abs(sol.spec.alpha))
    report = VerificationReport(f'{sol.label or sol.id.family.value}: Gordon residual')

    def sup_at(step):
        r = (mixed_derivative(sol.q, X, T, step) + 2.0 * s * q) / norm
        return r

    res = sup_at(h)
    sup, l2 = _sup_l2(res, mask)
    tol = _tolerance(sol)
    report.add('residual_sup', sup, tol)
    report.add('residual_l2', l2, tol)
    sup_half, _ = _sup_l2(sup_at(h / 2.0), mask)
    qmax = float(np.nanmax(np.abs(q[mask]))) if np.any(mask) else 0.0
    floor = 10.0 * _EPS * qmax * 2.25 / (0.25 * h * h) / norm
    _richardson(report, sup, sup_half, floor)
    if strict and not report.checks[-1].passed:
        raise GridTooCoarse(f"Residual does not shrink 8× when h halves (h = {h})")
    return report


def residual_nls(sol, grid, h=Config.FD_STEP, strict=False):
    """i q_t − q_xx + 2σ q² q̃ on a grid symmetric about the origin.

    Raises:
        AsymmetricGrid: x or t range not symmetric about 0
    """
    if sol.is_gordon:
        raise DomainError("residual_nls needs an RST-NLS solution")
    if not grid.symmetric:
        raise AsymmetricGrid("The nonlocal term reflects grid indices; use a grid symmetric about 0")
    X, T = grid.mesh()
    mask = exclusion_mask(sol, X, T, grid.exclusion_margin)
    q = sol.q(X, T)
    reflected = q[::-1, ::-1]
    sigma = sol.spec.sigma
    norm = sol.spec.q0 ** 3
    report = VerificationReport(f'{sol.label or sol.id.family.value}: RST-NLS residual')

    def residual(step):
        return (1j * first_derivative_t(sol.q, X, T, step) - second_derivative_x(sol.q, X, T, step)
                + 2.0 * sigma * q * q * reflected) / norm

    sup, l2 = _sup_l2(residual(h), mask)
    tol = _tolerance(sol)
    report.add('residual_sup', sup, tol)
    report.add('residual_l2', l2, tol)
    sup_half, _ = _sup_l2(residual(h / 2.0), mask)
    qmax = float(np.nanmax(np.abs(q[mask]))) if np.any(mask) else 0.0
    floor = 10.0 * _EPS * qmax * 64.0 / (12.0 * 0.25 * h * h) / norm
    _richardson(report, sup, sup_half, floor)
    if strict and not report.checks[-1].passed:
        raise GridTooCoarse(f"Residual does not shrink 8× when h halves (h = {h})")
    return report


# =============================================================================
# s CONSISTENCY AND BOUNDARY
# =============================================================================

def _right_of_lines(sol, X, T, margin):
    """Points whose ray [x, ∞) at fixed t stays clear of every singular line."""
    keep = np.ones(X.shape, dtype=bool)
    for line in sol.singular_lines:
        if line.a == 0:
            continue
        crossing = (line.c - line.b * T) / line.a
        keep &= X > crossing + margin
    return keep


def check_s_consistency(sol, grid):
    """Closed-form s against quadrature, plus the whole-line and reflection checks."""
    if sol.eval_s is None:
        raise DomainError(f"{sol.label or sol.id.family.value} has no closed-form s to compare")
    X, T = grid.mesh()
    xs, ts = grid.xs(), grid.ts()
    report = VerificationReport(f'{sol.label or sol.id.family.value}: s consistency')

    closed = sol.s(X, T)
    quad = np.array(parallel_map(lambda t: s_profile(sol, xs, t), list(ts)))
    mask = exclusion_mask(sol, X, T, grid.exclusion_margin) & _right_of_lines(sol, X, T, grid.exclusion_margin)
    diff = np.abs(closed - quad)[mask]
    report.add('s_consistency', float(diff.max()) if diff.size else float('nan'), Config.TOL_S_CONSISTENCY)

    picks = np.flatnonzero(mask.ravel())
    if picks.size:
        picks = picks[np.linspace(0, picks.size - 1, min(Config.S_SPOT_CHECKS, picks.size)).astype(int)]
        spot = [abs(closed.ravel()[i] - s_by_quadrature(sol, X.ravel()[i], T.ravel()[i])) for i in picks]
        report.add('s_spot_quadrature', max(spot), Config.TOL_S_CONSISTENCY, detail=f'{picks.size} points')

    if not sol.singular:
        far, _ = _far_limit(sol, max(abs(grid.x_lo), abs(grid.x_hi)))
        whole = [abs(s_profile(sol, np.array([-far]), t, x_far=far)[0]) for t in ts]
        report.add('whole_line_integral', max(whole), Config.TOL_WHOLE_LINE)

    mirrored = sol.s(-X, -T)
    sym_mask = exclusion_mask(sol, X, T, grid.exclusion_margin) & exclusion_mask(sol, -X, -T, grid.exclusion_margin)
    sym = np.abs(mirrored - closed)[sym_mask]
    scale = max(1.0, float(np.max(np.abs(closed[sym_mask])))) if sym.size else 1.0
    report.add('s_symmetry', float(sym.max()) / scale if sym.size else float('nan'), Config.TOL_S_SYMMETRY)

    limit = sol.s_limit()
    edge = np.concatenate([np.abs(sol.s(np.full(ts.shape, sign * _far_limit(sol, grid.x_hi)[0]), ts) - limit)
                           for sign in (1.0, -1.0)])
    report.add('s_infinity', float(edge.max()), Config.TOL_S_INFINITY)
    return report


def check_boundary(sol, grid):
    """Boundary defect at x = ±X and the fitted exponential decay rate.

    The rate is fitted from the max-over-t defects at X and at X − ΔX,
    ΔX = min(X/2, 3/rate).  Defects below TOL_BOUNDARY_FLOOR count as exact.
    """
    ts = grid.ts()
    X = min(abs(grid.x_lo), abs(grid.x_hi))
    rate = sol.decay_rate or sol.spec.q0
    dX = min(0.5 * X, 3.0 / rate)
    report = VerificationReport(f'{sol.label or sol.id.family.value}: boundary')

    def defect(at):
        plus = np.abs(sol.q(np.full(ts.shape, at), ts) - sol.boundary('+', at, ts))
        minus = np.abs(sol.q(np.full(ts.shape, -at), ts) - sol.boundary('-', -at, ts))
        return float(np.nanmax(np.concatenate([plus, minus])))

    outer, inner = defect(X), defect(X - dX)
    scale = sol.spec.q0
    if outer <= Config.TOL_BOUNDARY_FLOOR * scale:
        report.add('boundary_defect', outer, Config.TOL_BOUNDARY_FLOOR * scale, True, 'exact to roundoff')
        return report
    fitted = math.log(max(inner, 1e-300) / outer) / dX
    expected_bound = inner * math.exp(-rate * dX)
    report.add('boundary_defect', outer, max(expected_bound * 10.0, Config.TOL_BOUNDARY_FLOOR * scale))
    report.add('boundary_rate', -fitted, -Config.TOL_BOUNDARY_RATE * rate,
               fitted >= Config.TOL_BOUNDARY_RATE * rate, f'fitted {fitted:.4g}, declared {rate:.4g}')
    return report


# =============================================================================
# SINGULARITY CERTIFICATION
# =============================================================================

def _sign_crossings(D, X, T):
    found = []
    real = np.real(D)
    sx = np.signbit(real[:, :-1]) != np.signbit(real[:, 1:])
    for i, j in np.argwhere(sx):
        a, b = real[i, j], real[i, j + 1]
        frac = a / (a - b) if a != b else 0.5
        found.append((X[i, j] + frac * (X[i, j + 1] - X[i, j]), T[i, j]))
    st = np.signbit(real[:-1, :]) != np.signbit(real[1:, :])
    for i, j in np.argwhere(st):
        a, b = real[i, j], real[i + 1, j]
        frac = a / (a - b) if a != b else 0.5
        found.append((X[i, j], T[i, j] + frac * (T[i + 1, j] - T[i, j])))
    return found


def _touching_zeros(den, D, X, T, hx, ht):
    """Zeros without a sign change: 2-D local minima of |D| refined inside their cell."""
    A = np.abs(D)
    padded = np.pad(A, 1, mode='edge')
    centre = padded[1:-1, 1:-1]
    is_min = np.ones(A.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= centre <= padded[1 + di:padded.shape[0] - 1 + di, 1 + dj:padded.shape[1] - 1 + dj]
    scale = float(np.median(A)) or 1.0
    found = []
    for i, j in np.argwhere(is_min):
        x0, t0 = X[i, j], T[i, j]
        res = optimize.minimize(lambda v: float(np.abs(den(np.array(v[0]), np.array(v[1])))),
                                [x0, t0], method='L-BFGS-B',
                                bounds=[(x0 - hx, x0 + hx), (t0 - ht, t0 + ht)])
        if res.fun <= 1e-9 * scale:
            found.append((float(res.x[0]), float(res.x[1])))
    return found


def detect_zero_set(den, grid):
    """Points where den (a callable of x, t) vanishes on the grid."""
    X, T = grid.mesh()
    D = den(X, T)
    return _sign_crossings(D, X, T) + _touching_zeros(den, D, X, T, grid.hx, grid.ht)


def certify_singular_lines(sol, grid, denominator=None):
    """Detected zero set of the denominator versus the declared singular lines.

    Agreement is the largest distance from a detection to its nearest
    declared line; it must not exceed one grid cell.  Every declared line
    must be detected at least once.
    """
    den = denominator or sol.scaled_denominator
    if den is None:
        raise DomainError(f"{sol.label or sol.id.family.value} exposes no denominator")
    report = VerificationReport(f'{sol.label or sol.id.family.value}: singular lines')
    found = detect_zero_set(den, grid)
    lines = sol.singular_lines
    if not lines:
        report.add('spurious_zeros', len(found), 0)
        return report
    if not found:
        report.add('singular_line_agreement', float('inf'), grid.cell, False, 'no zeros detected')
        return report
    pts = np.array(found)
    dist = np.min(np.stack([line.distance(pts[:, 0], pts[:, 1]) for line in lines]), axis=0)
    report.add('singular_line_agreement', float(dist.max()), grid.cell,
               detail=f'{len(found)} detections')
    covered = [bool(np.any(line.distance(pts[:, 0], pts[:, 1]) <= grid.cell)) for line in lines]
    report.add('lines_detected', sum(covered), len(lines), all(covered))
    return report


def certify_denominator(sol, grid):
    """min over the grid of the scaled denominator versus its certified floor."""
    if sol.scaled_denominator is None or sol.denominator_floor is None:
        raise DomainError(f"{sol.label or sol.id.family.value} has no certified denominator floor")
    X, T = grid.mesh()
    low = float(np.min(np.real(sol.scaled_denominator(X, T))))
    floor = sol.denominator_floor
    report = VerificationReport(f'{sol.label or sol.id.family.value}: denominator')
    report.add('denominator_min', -low, -floor * (1.0 - 1e-12), low >= floor * (1.0 - 1e-12),
               f'min {low:.6g} vs floor {floor:.6g}')
    return report


# =============================================================================
# FULL VERIFICATION
# =============================================================================

def verify_solution(sol, grid=None):
    """Every check that applies to sol, merged into one report."""
    grid = grid or default_grid()
    report = VerificationReport(sol.label or sol.id.family.value)
    if sol.is_gordon:
        report.extend(residual_gordon(sol, grid))
        if sol.eval_s is not None:
            report.extend(check_s_consistency(sol, grid))
    else:
        report.extend(residual_nls(sol, grid))
    report.extend(check_boundary(sol, grid))
    if sol.singular_lines and sol.scaled_denominator is not None:
        report.extend(certify_singular_lines(sol, grid))
    if sol.denominator_floor is not None and sol.scaled_denominator is not None:
        report.extend(certify_denominator(sol, grid))
    logger.info(f"Verification of {report.label}: {'pass' if report.verdict else 'fail'}")
    return report
