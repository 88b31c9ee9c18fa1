"""
Errors.py
Exception hierarchy for the nonlocal inverse scattering toolkit
Last updated: 2026-10-19

Every error raised by the library derives from IstError so callers (and the
CLI) can catch one type.  Parameter and domain problems are also ValueErrors;
numerical failures are also RuntimeErrors.

    IstError
    ├── DomainError (ValueError)
    │   ├── PhaseSumError, AlphaMismatch, KindSignMismatch
    │   ├── ParameterDomain → DegeneratePhase, TanPole, CotPole, VelocityPole
    │   ├── BranchPointProximity, DegenerateNormalizer, KPole
    │   ├── ContourPole, LogBranch, RepeatedZero
    │   ├── ConstraintViolated, ImproperEigenvalue
    │   ├── NotReflectionless, MissingDerivative
    │   └── AsymmetricGrid, UsageError
    └── NumericalError (RuntimeError)
        ├── IntegratorFailure, NoConvergence, ClusteredZeros, Divergence
        ├── SingularPoint
        └── GridTooCoarse
"""


class IstError(Exception):
    """Base class for every error raised by this package."""


# =============================================================================
# DOMAIN AND PARAMETER ERRORS
# =============================================================================

class DomainError(IstError, ValueError):
    """Input lies outside the domain an operation is defined on."""


class PhaseSumError(DomainError):
    """θ₊ + θ₋ is not 0 or π (mod 2π)."""


class AlphaMismatch(DomainError):
    """RST-NLS frequency α inconsistent with σ, q0 and the phase case."""


class KindSignMismatch(DomainError):
    """Equation kind and σ disagree (sinh-Gordon needs σ=+1, sine-Gordon σ=−1)."""


class ParameterDomain(DomainError):
    """Closed-form family parameters outside the family's validity range."""


class DegeneratePhase(ParameterDomain):
    """θ₊ makes the soliton collapse onto the background."""


class TanPole(ParameterDomain):
    """tan θ₊ is infinite while α ≠ 0."""


class CotPole(ParameterDomain):
    """cot θ₊ is infinite while α ≠ 0."""


class VelocityPole(ParameterDomain):
    """Spatial-BC soliton velocity denominator vanishes."""


class BranchPointProximity(DomainError):
    """|λ(z)| is too small for the Jost normalization to be usable."""


class DegenerateNormalizer(DomainError):
    """λ(λ + k) vanishes, so the Wronskian normalization is undefined."""


class KPole(DomainError):
    """Time-evolution exponent has a pole (k = 0, or k = β/2 with β ≠ 0)."""


class ContourPole(DomainError):
    """Trace formula evaluated too close to the continuous spectrum."""


class LogBranch(DomainError):
    """1 ± b(ξ)² crosses the negative real axis on the contour."""


class RepeatedZero(DomainError):
    """Two discrete eigenvalues coincide, so a′(z_j) vanishes."""


class ConstraintViolated(DomainError):
    """Reflectionless product constraint or involution pairing fails."""


class ImproperEigenvalue(DomainError):
    """Eigenvalue on the continuous spectrum, outside the analytic region, or J=1 on a circle cut."""


class NotReflectionless(DomainError):
    """Operation needs reflectionless data but reflection samples are present."""


class MissingDerivative(DomainError):
    """a′(z_j) or ā′(z̄_j) is absent from the discrete data."""


class AsymmetricGrid(DomainError):
    """Grid is not symmetric about the origin, so q(−x, −t) cannot be taken from it."""


class UsageError(DomainError):
    """Command-line arguments are inconsistent or incomplete."""


# =============================================================================
# NUMERICAL FAILURES
# =============================================================================

class NumericalError(IstError, RuntimeError):
    """A numerical procedure could not deliver a trustworthy value."""


class IntegratorFailure(NumericalError):
    """The ODE integrator stopped before reaching the end of the interval."""


class NoConvergence(NumericalError):
    """Root refinement did not reach the requested tolerance."""


class ClusteredZeros(NumericalError):
    """Two distinct zeros of a(z) are closer than the cluster tolerance."""

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


class Divergence(NumericalError):
    """Neumann iterates grow instead of converging."""


class SingularPoint(NumericalError):
    """The discrete system is singular at (x, t): the field blows up there."""

    def __init__(self, x, t, condition):
        super().__init__(
            f"Discrete system singular at x={x:.6g}, t={t:.6g} "
            f"(condition estimate {condition:.3g})"
        )
        self.x = x
        self.t = t
        self.condition = condition


class GridTooCoarse(NumericalError):
    """Residual does not shrink at fourth order when the stencil step is halved."""
