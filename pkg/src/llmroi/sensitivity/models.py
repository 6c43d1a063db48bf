"""Named scenario models for global sensitivity analysis.

A model name picks the output (earnings or return on investment), the
scenario family, and through ``cost_units`` how the sampled price variable C
is scaled inside the cost term:

* ``per-million``: C is currency per million tokens, cost = C*T/1e6 (default,
  matching the pricing convention everywhere else in the package);
* ``per-token``: C is currency per token, cost = C*T.

Ranges below are the package defaults for each model's variables; callers
can override any of them per analysis.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import ValidationError
from ..kernels import get_kernels
from .local import BINARY_VARIABLES, SINGLE_VARIABLES

MODEL_SINGLE_EARNINGS = "single-earnings"
MODEL_SINGLE_ROI = "single-roi"
MODEL_BINARY_EARNINGS = "binary-earnings"
MODEL_BINARY_ROI = "binary-roi"
MODEL_NAMES = (MODEL_SINGLE_EARNINGS, MODEL_SINGLE_ROI,
               MODEL_BINARY_EARNINGS, MODEL_BINARY_ROI)

COST_UNITS_PER_MILLION = "per-million"
COST_UNITS_PER_TOKEN = "per-token"
COST_UNITS = (COST_UNITS_PER_MILLION, COST_UNITS_PER_TOKEN)
_COST_SCALE = {COST_UNITS_PER_MILLION: 1e-6, COST_UNITS_PER_TOKEN: 1.0}

# Default sampling boxes for the scenario variables. The binary box keeps
# max(P_TP) + max(P_FP) + max(P_FN) <= 1 so the derived true-negative
# probability is nonnegative everywhere.
DEFAULT_SINGLE_RANGES: dict[str, tuple[float, float]] = {
    "G": (1.0, 1000.0),
    "L": (0.0, 1000.0),
    "C": (0.01, 100.0),
    "P": (0.10, 1.0),
    "T": (50.0, 128000.0),
}
DEFAULT_BINARY_RANGES: dict[str, tuple[float, float]] = {
    "G": (1.0, 1000.0),
    "L_FP": (0.0, 1000.0),
    "L_FN": (0.0, 1000.0),
    "C": (0.01, 100.0),
    "P_FP": (0.0, 0.1),
    "P_FN": (0.0, 0.1),
    "P_TP": (0.0, 0.3),
    "T": (50.0, 128000.0),
}

Evaluator = Callable[[np.ndarray, np.ndarray], None]


def cost_scale(cost_units: str) -> float:
    """Multiplier applied to C*T by the kernels for the given price units."""
    if cost_units not in COST_UNITS:
        raise ValidationError(
            f"cost_units must be one of {COST_UNITS}, got {cost_units!r}",
            field="cost_units", value=cost_units)
    return _COST_SCALE[cost_units]


def default_ranges(model: str) -> dict[str, tuple[float, float]]:
    if model in (MODEL_SINGLE_EARNINGS, MODEL_SINGLE_ROI):
        return dict(DEFAULT_SINGLE_RANGES)
    if model in (MODEL_BINARY_EARNINGS, MODEL_BINARY_ROI):
        return dict(DEFAULT_BINARY_RANGES)
    raise ValidationError(f"unknown model {model!r}", field="model", value=model)


def model_variables(model: str) -> tuple[str, ...]:
    if model in (MODEL_SINGLE_EARNINGS, MODEL_SINGLE_ROI):
        return SINGLE_VARIABLES
    if model in (MODEL_BINARY_EARNINGS, MODEL_BINARY_ROI):
        return BINARY_VARIABLES
    raise ValidationError(f"unknown model {model!r}", field="model", value=model)


def resolve_evaluator(model: str, variant: str = "paper-compat",
                      cost_units: str = COST_UNITS_PER_MILLION,
                      backend: str | None = None) -> Evaluator:
    """Bind a named model to a batch evaluator ``(x, out) -> None``."""
    if cost_units not in COST_UNITS:
        raise ValidationError(
            f"cost_units must be one of {COST_UNITS}, got {cost_units!r}",
            field="cost_units", value=cost_units)
    if variant not in ("canonical", "paper-compat"):
        raise ValidationError(f"unknown variant {variant!r}", field="variant",
                              value=variant)
    scale = _COST_SCALE[cost_units]
    kernels = get_kernels(backend)
    if model == MODEL_SINGLE_EARNINGS:
        fn = kernels.single_earnings
    elif model == MODEL_SINGLE_ROI:
        fn = kernels.single_roi
    elif model == MODEL_BINARY_EARNINGS:
        fn = (kernels.binary_earnings_compat if variant == "paper-compat"
              else kernels.binary_earnings_canonical)
    elif model == MODEL_BINARY_ROI:
        fn = (kernels.binary_roi_compat if variant == "paper-compat"
              else kernels.binary_roi_canonical)
    else:
        raise ValidationError(f"unknown model {model!r}", field="model", value=model)

    def evaluate(x: np.ndarray, out: np.ndarray) -> None:
        fn(x, out, scale)

    return evaluate


def validate_binary_ranges(ranges: dict[str, tuple[float, float]]) -> None:
    """The sampled box must keep the derived p_tn nonnegative everywhere."""
    total = ranges["P_TP"][1] + ranges["P_FP"][1] + ranges["P_FN"][1]
    if total > 1.0 + 1e-12:
        raise ValidationError(
            "max(P_TP) + max(P_FP) + max(P_FN) "
            f"= {total} exceeds 1; the derived p_tn would go negative",
            field="ranges", value=total)
