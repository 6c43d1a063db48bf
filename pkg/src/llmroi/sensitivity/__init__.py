"""Local (analytic derivative) and global (variance-based) sensitivity."""

from .local import (
    BINARY_VARIABLES,
    MODEL_BINARY_CANONICAL,
    MODEL_BINARY_COMPAT,
    MODEL_SINGLE,
    SINGLE_VARIABLES,
    TARGET_EARNINGS,
    TARGET_ROI,
    LocalSensitivity,
    ParameterVector,
    finite_difference_gradient,
    finite_difference_hessian,
    gradient_binary,
    gradient_single,
    hessian_binary,
    hessian_single,
    local_report,
    scalar_evaluator,
)
from .models import (
    COST_UNITS,
    COST_UNITS_PER_MILLION,
    COST_UNITS_PER_TOKEN,
    DEFAULT_BINARY_RANGES,
    DEFAULT_SINGLE_RANGES,
    MODEL_BINARY_EARNINGS,
    MODEL_BINARY_ROI,
    MODEL_NAMES,
    MODEL_SINGLE_EARNINGS,
    MODEL_SINGLE_ROI,
    default_ranges,
    model_variables,
    resolve_evaluator,
)
from .sobol import (
    SaltelliDesign,
    SobolIndices,
    SobolSpec,
    saltelli_sample,
    sobol_analyze,
)

__all__ = [name for name in dir() if not name.startswith("_")]
