"""Sharp extremal constants and extremizer vectors for complete homogeneous
symmetric polynomials and for absolute moments of weighted sums of i.i.d.
standard exponential variables, with independent numerical verification.
"""

from ._backend import BACKEND as kernel_backend
from .core import (
    DEFAULT_CONFIG,
    EvalConfig,
    as_weights,
    h_all,
    h_eval,
    h_grad,
    h_repeated,
    hunter_1977_bound,
    majorizes,
    palindrome_class,
    power_sum,
    rearrange_desc,
    schur_ostrowski_value,
)
from .extremal import (
    ExtremalResult,
    centred_h4_min,
    centred_max,
    centred_min,
    centred_n3_bounds,
    centred_p_max,
    gamma_pair_moment_poly,
    h4_unconditional,
    hunter_min,
    linf_min,
    nk_continuous,
    nonneg_max,
    nonneg_min,
    rho1,
    u0_ratio,
)
from .matrix_norms import chs_norm, classical_norms, comparison_constants, singular_values
from .moments import McSettings, abs_moment, borell_G, integer_moment, rho
from .verify import ConstraintSet, OptimizerSettings, optimize_constrained

__version__ = "0.1.0"

__all__ = [
    "ConstraintSet",
    "DEFAULT_CONFIG",
    "EvalConfig",
    "ExtremalResult",
    "McSettings",
    "OptimizerSettings",
    "abs_moment",
    "as_weights",
    "borell_G",
    "centred_h4_min",
    "centred_max",
    "centred_min",
    "centred_n3_bounds",
    "centred_p_max",
    "chs_norm",
    "classical_norms",
    "comparison_constants",
    "gamma_pair_moment_poly",
    "h4_unconditional",
    "h_all",
    "h_eval",
    "h_grad",
    "h_repeated",
    "hunter_1977_bound",
    "hunter_min",
    "integer_moment",
    "kernel_backend",
    "linf_min",
    "majorizes",
    "nk_continuous",
    "nonneg_max",
    "nonneg_min",
    "optimize_constrained",
    "palindrome_class",
    "power_sum",
    "rearrange_desc",
    "rho",
    "rho1",
    "schur_ostrowski_value",
    "singular_values",
    "u0_ratio",
    "__version__",
]
