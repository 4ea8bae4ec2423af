"""Exception types shared across the package.

Every guard that refuses an input (rather than silently perturbing it) raises
one of these, so callers can distinguish "you asked for something outside the
contract" from genuine numerical failure.
"""


class ChsError(Exception):
    """Base class for all package-specific errors."""


class LengthMismatch(ChsError, ValueError):
    """Two vectors that must share a length do not."""


class IndexOutOfRange(ChsError, IndexError):
    """A coordinate index falls outside the weight vector."""


class DistinctnessViolation(ChsError, ValueError):
    """An interpolation-type formula got coordinates closer than the
    distinctness tolerance; these formulas have removable singularities and
    refuse clustered input instead of perturbing it."""


class BudgetExceeded(ChsError, ValueError):
    """A combinatorial evaluation method was asked to enumerate more terms
    than its cutoff allows."""


class ZeroCoefficient(ChsError, ValueError):
    """The mixture-density formula needs every coefficient nonzero."""


class PoleHit(ChsError, ValueError):
    """A Gamma-function argument landed on a non-positive integer."""


class UnsupportedExponent(ChsError, ValueError):
    """The requested exponent lies outside the validity window of the chosen
    method (Fourier windows, or the unclassified region of the n=3 centred
    case split)."""


class NonConvergedQuadrature(ChsError, RuntimeError):
    """Adaptive quadrature reported an error estimate above tolerance."""


class OddDimension(ChsError, ValueError):
    """An operation defined only for even dimension got an odd one."""


class BracketFailure(ChsError, RuntimeError):
    """A root bracket shows no sign change."""


class RootIsolationFailure(ChsError, RuntimeError):
    """Polynomial root extraction failed to produce usable candidates."""


class ConvergenceFailure(ChsError, RuntimeError):
    """An iterative scheme exhausted its sweep budget."""


class SamplerDegenerate(ChsError, RuntimeError):
    """A constrained random sampler could not produce a feasible point."""
