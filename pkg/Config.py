"""
Config.py
Configuration constants for the nonlocal inverse scattering toolkit
Last updated: 2026-10-19

Contains:
    Phase and contour tolerances (case tests, region classification)
    Jost integrator settings (DOP853 tolerances, domain truncation)
    Eigenvalue search defaults (annulus, grid, secant tolerance)
    Neumann-series oracle limits
    Discrete solve guards (condition cap, removable-point fallback)
    Verification tolerances and finite-difference steps
    Figure parameters used throughout tests and CLI defaults
    Parallelism and CLI exit codes

All tolerances are dimensionless unless noted.  Relative tolerances are
taken against max(1, |value|) so they stay meaningful near zero.
"""

import math


# =============================================================================
# PHASES AND SPECTRAL PLANE
# =============================================================================

PHASE_TOL = 1e-12             # rad, tolerance on (θ₊ + θ₋) mod 2π ∈ {0, π}
CONTOUR_TOL = 1e-12           # relative, |Im λ| below this → Contour
BRANCH_POINT_MIN_LAMBDA = 1e-8  # |λ(z)| below this → too close to a branch point
TWO_PI = 2.0 * math.pi


# =============================================================================
# JOST INTEGRATION
# =============================================================================
# Bounded gauge, DOP853 (8th order Dormand-Prince with dense output)

JOST_METHOD = 'DOP853'
JOST_RTOL = 1e-10
JOST_ATOL = 1e-12
JOST_TAIL_EXPONENT = 25.0     # L = max(25/q0, 25/decay_rate) → e^{-25} tail
JOST_TAIL_TARGET = 1e-12      # target |q − background| beyond ±L
WRONSKIAN_DRIFT_TOL = 1e-8    # relative drift of W over [−L, L]
UNITARITY_TOL = 1e-8          # |aā − bb̄ − 1|


# =============================================================================
# EIGENVALUE SEARCH
# =============================================================================

EIG_R_MIN_FACTOR = 0.05       # inner radius of search annulus, × q0
EIG_R_MAX_FACTOR = 20.0       # outer radius of search annulus, × q0
EIG_CONTOUR_MARGIN = 1e-3     # keep-out distance from the continuous spectrum
EIG_GRID_RADII = 14           # log-spaced radii in the coarse scan
EIG_GRID_ANGLES = 16          # angles per half-plane in the coarse scan
EIG_TOL = 1e-9                # accept a root when |a(z)| below this
EIG_CLUSTER_TOL = 1e-6        # distinct roots closer than this → ClusteredZeros
EIG_DEDUP_TOL = 1e-8          # refined candidates closer than this are one root
EIG_SECANT_MAXITER = 60

NORMING_WINDOW_FRACTION = 0.1  # keep x where |N| > 0.1·max|N|
REFLECTIONLESS_TOL = 1e-6     # max |b(ξ)| on Σ below this → treat the potential as reflectionless
CONTOUR_SAMPLES = 64          # default number of ξ samples per contour piece


# =============================================================================
# NEUMANN-SERIES ORACLE
# =============================================================================

NEUMANN_MAX_ITER = 50
NEUMANN_STEP = 1e-3           # uniform grid spacing
NEUMANN_TOL = 1e-12           # sup-norm change between iterates, relative to |w|
NEUMANN_BLOWUP = 1e8          # iterate norm growth treated as divergence


# =============================================================================
# TRACE FORMULA
# =============================================================================

CONTOUR_POLE_TOL = 1e-6       # z this close to Σ → ContourPole
CONSTRAINT_RTOL = 1e-10       # product constraint relative tolerance
IMPROPER_EIG_TOL = 1e-9       # |z_j| this close to q0 on circle cuts → improper
PAIRING_RTOL = 1e-10          # stored z̄_j versus involution(z_j)
QUAD_LIMIT = 400              # scipy quad subinterval limit
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-11


# =============================================================================
# DISCRETE SYSTEM
# =============================================================================

SINGULAR_COND_MAX = 1e12      # condition estimate that marks a genuine singular point
REMOVABLE_COND_MAX = 1e2      # above this, evaluate by the Cauchy mean over a small circle in x
REMOVABLE_RADIUS = 0.1        # circle radius, divided by the soliton decay rate
REMOVABLE_NODES = 16          # trapezoid nodes on the circle
REMOVABLE_RESIDUE_TOL = 1e-8  # |residue| above this × q0·radius → pole, not removable
REMOVABLE_BOUND = 1e3         # |q| beyond this × q0 on the circle → pole


# =============================================================================
# VERIFICATION
# =============================================================================

FD_STEP = 1e-3                # stencil step for residual checks
S_DT_REL_STEP = 1e-5          # central difference step for ∂t inside s, relative
S_TAIL_TARGET = 1e-12         # truncate s quadrature where the integrand tail is below this
S_PANEL_NODES = 8             # Gauss-Legendre nodes per panel for row-wise s
S_SPOT_CHECKS = 5             # grid points re-checked by adaptive quadrature in check_s_consistency
EXCLUSION_MARGIN = 0.1        # distance from declared singular lines
RICHARDSON_FACTOR = 8.0       # halving h must cut the residual by at least this
NOISE_FLOOR = 1e-12           # absolute floor below which Richardson is not applied

TOL_RESIDUAL_ONE = 1e-6       # normalized sup residual, 1-soliton families
TOL_RESIDUAL_TWO = 1e-5       # normalized sup residual, 2-soliton and boosted families
TOL_S_CONSISTENCY = 1e-6      # closed-form s versus quadrature
TOL_WHOLE_LINE = 1e-8         # |∫ ∂t(q q̃) dx| over the real line
TOL_S_SYMMETRY = 1e-10        # s(−x, −t) − s(x, t)
TOL_S_INFINITY = 1e-6         # s(±X) versus its limit
TOL_BOUNDARY_RATE = 0.9       # fitted decay rate must reach this fraction of the declared one
TOL_BOUNDARY_FLOOR = 1e-11    # boundary defects below this count as exact
TOL_ROUNDTRIP = 1e-5           # sup |reconstruction − closed form| after direct scattering


# =============================================================================
# FIGURE PARAMETERS
# =============================================================================
# Defaults for CLI and tests (q0 = 2, α = 1, θ₊ = π/3, two-soliton q1 = 4)

FIGURE_Q0 = 2.0
FIGURE_ALPHA = 1.0
FIGURE_THETA_PLUS = math.pi / 3.0
FIGURE_Q1 = 4.0

DEFAULT_GRID = '-6:6:0.01,-4:4:0.05'
ROUNDTRIP_GRID = '-6:6:0.05,-4:4:0.5'   # coarser: each row is a batch of discrete solves


# =============================================================================
# PARALLELISM AND CLI
# =============================================================================

THREADS_ENV_VAR = 'NONLOCAL_IST_THREADS'   # 0 or unset = os.cpu_count()

EXIT_OK = 0
EXIT_USAGE = 1                # usage and domain errors
EXIT_VERIFY_FAIL = 2

CSV_FLOAT_FORMAT = '%.17g'    # round-trip exact, bit-stable
