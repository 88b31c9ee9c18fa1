"""
InverseReflectionless.py
Reflectionless reconstruction of q(x,t) from discrete scattering data
Last updated: 2026-10-19

CLOSING SYSTEM (all four symmetry cases, J eigenvalue pairs):
    E_m = e^{2iλ(z_m)x},  Ē_j = e^{−2iλ(z̄_j)x}
    C_lj = z_l b̄_j Ē_j / ((z_l − z̄_j) z̄_j ā′_j)
    D_jm = z̄_j b_m E_m / ((z̄_j − z_m) z_m a′_m)

    (I − CD) N₁ = −i q₊ 1 + C z̄          first component at z_l
    (I − CD) N₂ = z + C (i r₊ 1)          second component at z_l
    N̄(z̄_j) = (z̄_j, i r₊) + D N(z_m)       values at the paired zeros

RECOVERY:
    q = q₊ [1 + Σ_j b_j E_j N₁(z_j) / (−z_j² a′_j)]
    q = q₊ + i Σ_j b̄_j Ē_j N̄₁(z̄_j) / (z̄_j ā′_j)     (large-z route, cross-check)

REMOVABLE POINTS:
    J = 1 dark data make det(I − CD) vanish on the soliton centre line while
    the right-hand side vanishes too.  Points whose condition estimate exceeds
    REMOVABLE_COND_MAX are replaced by the mean of q over a small circle in
    complex x (exact for analytic q); a nonzero circle residue marks a pole.
"""

import logging

import numpy as np

import Config
from ClosedForm import Family, FieldSolution, SolutionId
from Errors import DomainError, NotReflectionless, SingularPoint
from ModelConfig import background, boundary_partner
from Parallel import parallel_map
from ScatteringData import evolve, require_derivatives
from SpectralPlane import lambda_of

logger = logging.getLogger(__name__)


# =============================================================================
# SYSTEM ASSEMBLY
# =============================================================================

class DiscreteSystem:
    """The stacked closing systems at fixed t for a vector of x values.

    Attributes (n = number of x values, J = number of eigenvalue pairs):
        matrix    (n, J, J)  I − CD
        rhs       (n, J)     −i q₊ + C z̄
        rhs_second (n, J)    z + C (i r₊ 1)
        C, D      (n, J, J)
        E, E_bar  (n, J)
    """

    def __init__(self, data, spec, x, t):
        self.data = data
        self.spec = spec
        self.x = x
        self.t = t
        self.J = data.J
        self.q_plus = complex(background(spec, '+', t))
        self.r_plus = complex(boundary_partner(spec, '+', t))

        n, J = x.size, data.J
        zs = data.eigenvalues
        zbs = data.eigenvalues_bar
        self.z, self.z_bar = zs, zbs
        self.b = np.array([d.b for d in data.discrete], dtype=complex)
        self.b_bar = np.array([d.b_bar for d in data.discrete], dtype=complex)
        self.a_prime = np.array([d.a_prime for d in data.discrete], dtype=complex)
        self.a_bar_prime = np.array([d.a_bar_prime for d in data.discrete], dtype=complex)

        if J == 0:
            empty = np.zeros((n, 0), dtype=complex)
            self.E = self.E_bar = empty
            self.C = self.D = self.matrix = np.zeros((n, 0, 0), dtype=complex)
            self.rhs = self.rhs_second = empty
            return

        lam = lambda_of(zs, data.q0, data.topology)
        lam_bar = lambda_of(zbs, data.q0, data.topology)
        self.E = np.exp(2j * x[:, None] * lam[None, :])
        self.E_bar = np.exp(-2j * x[:, None] * lam_bar[None, :])

        c_static = zs[:, None] * self.b_bar[None, :] / (
            (zs[:, None] - zbs[None, :]) * zbs[None, :] * self.a_bar_prime[None, :])
        d_static = zbs[:, None] * self.b[None, :] / (
            (zbs[:, None] - zs[None, :]) * zs[None, :] * self.a_prime[None, :])
        self.C = c_static[None, :, :] * self.E_bar[:, None, :]
        self.D = d_static[None, :, :] * self.E[:, None, :]

        self.CD = self.C @ self.D
        self.matrix = np.eye(J, dtype=complex)[None, :, :] - self.CD
        self.rhs = -1j * self.q_plus + self.C @ zbs
        self.rhs_second = zs[None, :] + self.C @ np.full(J, 1j * self.r_plus)

    # ------------------------------------------------------------------
    # CONDITIONING
    # ------------------------------------------------------------------

    def equilibration(self):
        """Row and column scalings R, S with R·A·S having unit max entries."""
        A = np.abs(self.matrix)
        row = A.max(axis=2)
        row = np.where(row > 0, row, 1.0)
        scaled = A / row[:, :, None]
        col = scaled.max(axis=1)
        col = np.where(col > 0, col, 1.0)
        return 1.0 / row, 1.0 / col

    def condition(self):
        """Cancellation-aware (Skeel) condition estimate per x.

        ‖ |A_s⁻¹| · R(|I| + |CD|)S ‖_∞ with A_s = R·A·S, so a 1×1 system
        1 − CD with CD ≈ 1 is reported as ill-conditioned.
        """
        n, J = self.x.size, self.J
        if J == 0:
            return np.ones(n)
        R, S = self.equilibration()
        A_s = R[:, :, None] * self.matrix * S[:, None, :]
        magnitude = R[:, :, None] * (np.eye(J)[None, :, :] + np.abs(self.CD)) * S[:, None, :]
        det = np.linalg.det(A_s)
        bad = ~np.isfinite(det) | (np.abs(det) == 0.0)
        safe = np.where(bad[:, None, None], np.eye(J)[None, :, :], A_s)
        inv = np.linalg.inv(safe)
        cond = np.abs(inv) @ magnitude
        cond = cond.sum(axis=2).max(axis=1)
        cond[bad] = np.inf
        return cond

    def determinant(self):
        return np.linalg.det(self.matrix) if self.J else np.ones(self.x.size, dtype=complex)

    def _solve(self, rhs):
        if self.J == 0:
            return rhs
        good = np.isfinite(self.determinant()) & (self.determinant() != 0)
        out = np.full(rhs.shape, np.nan + 0j)
        if np.any(good):
            out[good] = np.linalg.solve(self.matrix[good], rhs[good][..., None])[..., 0]
        return out

    def solve_first(self):
        """N₁(x, z_l) for every x, shape (n, J); NaN where A is exactly singular."""
        return self._solve(self.rhs)

    def solve_second(self):
        return self._solve(self.rhs_second)


def _prepare(data, spec, t):
    if not data.is_reflectionless:
        raise NotReflectionless(
            "Reconstruction here covers reflectionless data only; "
            f"got {len(data.reflection)} reflection samples"
        )
    if spec.beta != 0.0:
        raise DomainError("Reflectionless reconstruction assumes β = 0 backgrounds")
    if abs(data.theta_plus - spec.theta_plus) > Config.PHASE_TOL * 10:
        raise DomainError(
            f"Scattering data θ₊ = {data.theta_plus} differs from spec θ₊ = {spec.theta_plus}"
        )
    require_derivatives(data)
    return evolve(data, t, spec)


def assemble(data, spec, x, t):
    """Build the closing system at time t for scalar or array x.

    Raises:
        NotReflectionless: reflection samples present
        MissingDerivative: a′ or ā′ absent

    Examples:
        J=1 sinh0, x → +∞ → matrix → 1, solve_first → −i q₊
    """
    x = np.atleast_1d(np.asarray(x))
    x = x.astype(complex if np.iscomplexobj(x) else float)
    return DiscreteSystem(_prepare(data, spec, t), spec, x, float(t))


# =============================================================================
# RECOVERY
# =============================================================================

def _recovery_sum(system, N1):
    if system.J == 0:
        return np.full(system.x.size, system.q_plus)
    weights = system.b * system.E / (-system.z ** 2 * system.a_prime)
    return system.q_plus * (1.0 + np.sum(weights * N1, axis=1))


def _direct(data, spec, x, t):
    system = assemble(data, spec, x, t)
    return _recovery_sum(system, system.solve_first()), system.condition()


def _decay_scale(data):
    if data.J == 0:
        return 1.0
    lam = lambda_of(data.eigenvalues, data.q0, data.topology)
    return max(2.0 * float(np.max(np.abs(lam.imag))), 1e-3 * data.q0)


def recover_q_array(data, spec, x, t):
    """q on a vector of x at time t.

    Ill-conditioned points are re-evaluated as the mean of q over a circle
    of radius REMOVABLE_RADIUS/rate in complex x.  A vanishing circle
    residue means the point is removable and the mean is its value;
    otherwise a pole is nearby and the direct value is kept while the
    solve is still trustworthy.

    Returns:
        (values, singular) where singular flags genuine poles (values NaN there)
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    values, cond = _direct(data, spec, x, t)
    suspect = ~(cond <= Config.REMOVABLE_COND_MAX) | ~np.isfinite(values)
    singular = np.zeros(x.size, dtype=bool)
    if not np.any(suspect):
        return values, singular

    radius = Config.REMOVABLE_RADIUS / _decay_scale(data)
    phis = Config.TWO_PI * np.arange(Config.REMOVABLE_NODES) / Config.REMOVABLE_NODES
    offsets = radius * np.exp(1j * phis)
    xs = x[suspect]
    ring, ring_cond = _direct(data, spec, (xs[:, None] + offsets[None, :]).ravel(), t)
    ring = ring.reshape(xs.size, offsets.size)
    ring_cond = ring_cond.reshape(xs.size, offsets.size)
    ring_ok = (np.all(np.isfinite(ring), axis=1)
               & np.all(np.abs(ring) <= Config.REMOVABLE_BOUND * data.q0, axis=1)
               & np.all(ring_cond <= Config.SINGULAR_COND_MAX, axis=1))
    mean = ring.mean(axis=1)
    residue = np.abs((ring * offsets[None, :]).mean(axis=1))
    removable = ring_ok & (residue <= Config.REMOVABLE_RESIDUE_TOL * data.q0 * radius)

    idx = np.flatnonzero(suspect)
    direct_ok = np.isfinite(values[idx]) & (cond[idx] <= Config.SINGULAR_COND_MAX)
    values[idx[removable]] = mean[removable]
    pole = ~removable & ~direct_ok
    values[idx[pole]] = np.nan
    singular[idx[pole]] = True
    if np.any(removable):
        logger.warning(f"Evaluated {int(removable.sum())} removable points at t={t:g} by circle means")
    return values, singular


def recover_q(data, spec, x, t):
    """q(x, t) at a single point.

    Raises:
        SingularPoint: the closing system is singular and the neighbourhood blows up

    Examples:
        J=0 reflectionless data → q₊(t) = q0 e^{i(αt + θ₊)}
        J=1 sinh0, δ=1          → make_sinh_dark1 at (x, t)
    """
    values, singular = recover_q_array(data, spec, [x], t)
    if singular[0]:
        system = assemble(data, spec, [x], t)
        raise SingularPoint(float(x), float(t), float(system.condition()[0]))
    return complex(values[0])


def recover_q_large_z(data, spec, x, t):
    """Second recovery route through N̄₁(z̄_j) = z̄_j + Σ_m D_jm N₁(z_m)."""
    system = assemble(data, spec, x, t)
    if system.J == 0:
        return np.full(system.x.size, system.q_plus)
    N1 = system.solve_first()
    N1_bar = system.z_bar[None, :] + (system.D @ N1[..., None])[..., 0]
    weights = system.b_bar * system.E_bar / (system.z_bar * system.a_bar_prime)
    return system.q_plus + 1j * np.sum(weights * N1_bar, axis=1)


def eigenfunction_values(data, spec, x, t):
    """(N₁, N₂) at the upper eigenvalues, each of shape (n, J)."""
    system = assemble(data, spec, x, t)
    return system.solve_first(), system.solve_second()


# =============================================================================
# GRIDS
# =============================================================================

def reconstruct_grid(data, spec, xs, ts):
    """q on the tensor grid, shape (len(ts), len(xs)); NaN marks poles.

    Rows (one per t) are computed in parallel.

    Returns:
        (q, singular_mask)
    """
    xs = np.asarray(xs, dtype=float)
    rows = parallel_map(lambda t: recover_q_array(data, spec, xs, t), list(np.asarray(ts, dtype=float)))
    q = np.array([r[0] for r in rows]).reshape(len(rows), xs.size)
    mask = np.array([r[1] for r in rows]).reshape(len(rows), xs.size)
    return q, mask


def determinant_grid(data, spec, xs, ts):
    """det(I − CD) on the tensor grid, shape (len(ts), len(xs))."""
    xs = np.asarray(xs, dtype=float)
    rows = parallel_map(lambda t: assemble(data, spec, xs, t).determinant(), list(np.asarray(ts, dtype=float)))
    return np.array(rows).reshape(len(rows), xs.size)


def detect_singular_points(data, spec, xs, ts):
    """Grid points where the reconstruction has a genuine pole, as (x, t) pairs."""
    _, mask = reconstruct_grid(data, spec, xs, ts)
    it, ix = np.nonzero(mask)
    return [(float(xs[i]), float(ts[j])) for j, i in zip(it, ix)]


def recover_s(data, spec, grid):
    """s on a verify.Grid by row-wise quadrature of its defining integral.

    Raises:
        DomainError: RST-NLS spec (s belongs to the Gordon equations)
    """
    from Verify import s_row

    if not spec.is_gordon:
        raise DomainError("s(x, t) is defined for the Gordon equations only")
    sol = as_field_solution(data, spec)
    xs, ts = grid.xs(), grid.ts()
    rows = parallel_map(lambda t: s_row(sol, xs, t), list(ts))
    return np.array(rows).reshape(len(ts), xs.size)


def as_field_solution(data, spec, sol_id=None, singular_lines=()):
    """Wrap the reconstruction as a FieldSolution (poles evaluate to NaN).

    eval_q accepts broadcastable x, t arrays; points sharing a t value are
    solved together.
    """
    def eval_q(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        flat_x, flat_t = x.ravel(), t.ravel()
        out = np.empty(flat_x.size, dtype=complex)
        times, inverse = np.unique(flat_t, return_inverse=True)
        for k, tk in enumerate(times):
            sel = inverse == k
            out[sel], _ = recover_q_array(data, spec, flat_x[sel], tk)
        return out.reshape(x.shape)

    if sol_id is None:
        sol_id = _guess_id(data, spec)
    return FieldSolution(
        spec=spec,
        id=sol_id,
        eval_q=eval_q,
        singular_lines=tuple(singular_lines),
        decay_rate=_decay_scale(data) if data.J else None,
        label=f'reconstruction ({data.case.value}, J={data.J})',
    )


_CASE_FAMILIES = {
    ('sinh-gordon', 'sinh0', 1): Family.SINH_DARK1,
    ('sine-gordon', 'sinepi', 1): Family.SINE_DARK1,
    ('sinh-gordon', 'sinhpi', 2): Family.SINH_TWO,
    ('sine-gordon', 'sine0', 2): Family.SINE_TWO,
    ('rst-nls', 'sinh0', 1): Family.NLS_CASE1_DARK,
    ('rst-nls', 'sinhpi', 2): Family.NLS_CASE2_TWO,
    ('rst-nls', 'sinepi', 1): Family.NLS_CASE3_DARK,
    ('rst-nls', 'sine0', 2): Family.NLS_CASE4_TWO,
}

# one-soliton dark family → the singular family with the opposite δ
_SINGULAR_PARTNER = {
    Family.SINH_DARK1: Family.SINH_BRIGHT1_SINGULAR,
    Family.SINE_DARK1: Family.SINE_BRIGHT1_SINGULAR,
    Family.NLS_CASE1_DARK: Family.NLS_CASE1_SINGULAR,
    Family.NLS_CASE3_DARK: Family.NLS_CASE3_SINGULAR,
}


def _guess_id(data, spec):
    """Nearest closed-form family label for metadata; q1 from the largest |z_j|.

    One-soliton data picks the dark or the singular family from δ = sign Re(b/unit).
    """
    family = _CASE_FAMILIES.get((spec.kind.value, data.case.value, data.J))
    if family is None:
        family = Family.SINH_DARK1 if spec.sigma == 1 else Family.SINE_DARK1
        return SolutionId(family)
    if family.is_two:
        q1 = float(np.max(np.abs(data.eigenvalues)))
        unit = data.case.b_unit
        deltas = tuple(int(np.sign((d.b / unit).real)) or 1 for d in data.discrete)
        return SolutionId(family, deltas, q1)
    delta = int(np.sign((data.discrete[0].b / data.case.b_unit).real)) or 1
    if delta != family.fixed_delta:
        family = _SINGULAR_PARTNER[family]
    return SolutionId(family)
