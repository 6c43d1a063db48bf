"""Analytic local sensitivity: gradients and Hessians of both models.

Variable ordering is fixed and shared with the global-sensitivity code:

* single model:  (G, L, C, P, T)
* binary model:  (G, L_FP, L_FN, C, P_FP, P_FN, P_TP, T)

C here is the raw model variable; the transaction cost inside every formula
is ``C * T * cost_scale``. With the default ``cost_scale=1.0`` C is a plain
per-token price; adapters evaluating per-million-priced scenarios pass
``cost_scale=1e-6``.

Every analytic formula below is validated against central finite
differences in the test suite; the finite-difference helpers double as the
published oracle for that check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import EngineError, SingularModelError, ValidationError

SINGLE_VARIABLES = ("G", "L", "C", "P", "T")
BINARY_VARIABLES = ("G", "L_FP", "L_FN", "C", "P_FP", "P_FN", "P_TP", "T")

TARGET_EARNINGS = "earnings"
TARGET_ROI = "roi"
TARGETS = (TARGET_EARNINGS, TARGET_ROI)

MODEL_SINGLE = "single"
MODEL_BINARY_CANONICAL = "binary-canonical"
MODEL_BINARY_COMPAT = "binary-paper-compat"
MODELS = (MODEL_SINGLE, MODEL_BINARY_CANONICAL, MODEL_BINARY_COMPAT)


@dataclass(frozen=True)
class ParameterVector:
    """Named, ordered point in a model's parameter space."""

    names: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValidationError("names and values must have equal length",
                                  field="values")
        if len(set(self.names)) != len(self.names):
            raise ValidationError("variable names must be unique", field="names")

    @classmethod
    def single(cls, G: float, L: float, C: float, P: float, T: float) -> "ParameterVector":
        return cls(SINGLE_VARIABLES, (float(G), float(L), float(C), float(P), float(T)))

    @classmethod
    def binary(cls, G: float, L_FP: float, L_FN: float, C: float, P_FP: float,
               P_FN: float, P_TP: float, T: float) -> "ParameterVector":
        return cls(BINARY_VARIABLES, tuple(float(v) for v in
                                           (G, L_FP, L_FN, C, P_FP, P_FN, P_TP, T)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class LocalSensitivity:
    """Gradient, Hessian, and finite-difference residual at one point."""

    gradient: tuple[float, ...]
    hessian: tuple[tuple[float, ...], ...]
    evaluated_at: ParameterVector
    target: str
    model: str
    fd_max_relative_deviation: float


def _as_values(point, expected: int) -> np.ndarray:
    values = point.array if isinstance(point, ParameterVector) else \
        np.asarray(point, dtype=np.float64)
    if values.shape != (expected,):
        raise ValidationError(
            f"point must have {expected} coordinates, got shape {values.shape}",
            field="point")
    return values


def _check_target(target: str) -> None:
    if target not in TARGETS:
        raise ValidationError(f"target must be one of {TARGETS}, got {target!r}",
                              field="target", value=target)


def _cost(c: float, t: float, cost_scale: float, target: str) -> float:
    ct = c * t * cost_scale
    if target == TARGET_ROI and ct == 0.0:
        raise SingularModelError("return on investment is singular at zero cost")
    return ct


def gradient_single(point, target: str = TARGET_EARNINGS,
                    cost_scale: float = 1.0) -> np.ndarray:
    """Closed-form gradient of the single-outcome model, order (G, L, C, P, T)."""
    _check_target(target)
    g, l, c, p, t = _as_values(point, 5)
    s = cost_scale
    if target == TARGET_EARNINGS:
        return np.array([p, p - 1.0, -t * s, g + l, -c * s])
    ct = _cost(c, t, s, target)
    k = g * p - l * (1.0 - p)
    ct2 = ct * ct
    return np.array([
        p / ct,
        (p - 1.0) / ct,
        -k * t * s / ct2,
        (g + l) / ct,
        -k * c * s / ct2,
    ])


def hessian_single(point, target: str = TARGET_EARNINGS,
                   cost_scale: float = 1.0) -> np.ndarray:
    """Closed-form Hessian of the single-outcome model.

    The earnings Hessian is structurally sparse: only the symmetric pairs
    (G,P), (L,P), (C,T) are nonzero, with values 1, 1, -cost_scale.
    """
    _check_target(target)
    g, l, c, p, t = _as_values(point, 5)
    s = cost_scale
    h = np.zeros((5, 5))
    iG, iL, iC, iP, iT = range(5)
    if target == TARGET_EARNINGS:
        h[iG, iP] = h[iP, iG] = 1.0
        h[iL, iP] = h[iP, iL] = 1.0
        h[iC, iT] = h[iT, iC] = -s
        return h
    ct = _cost(c, t, s, target)
    k = g * p - l * (1.0 - p)
    ct2 = ct * ct
    ct3 = ct2 * ct
    h[iG, iC] = h[iC, iG] = -p * t * s / ct2
    h[iG, iP] = h[iP, iG] = 1.0 / ct
    h[iG, iT] = h[iT, iG] = -p * c * s / ct2
    h[iL, iC] = h[iC, iL] = (1.0 - p) * t * s / ct2
    h[iL, iP] = h[iP, iL] = 1.0 / ct
    h[iL, iT] = h[iT, iL] = (1.0 - p) * c * s / ct2
    h[iC, iC] = 2.0 * k * (t * s) ** 2 / ct3
    h[iC, iP] = h[iP, iC] = -(g + l) * t * s / ct2
    h[iC, iT] = h[iT, iC] = k * s / ct2
    h[iP, iT] = h[iT, iP] = -(g + l) * c * s / ct2
    h[iT, iT] = 2.0 * k * (c * s) ** 2 / ct3
    return h


def _check_binary_point(values: np.ndarray) -> None:
    total = values[4] + values[5] + values[6]
    if total > 1.0 + 1e-12:
        raise ValidationError(
            f"p_tp + p_fp + p_fn = {total} exceeds 1 at the evaluation point",
            field="point", value=total)


def gradient_binary(point, target: str = TARGET_EARNINGS,
                    variant: str = "canonical",
                    cost_scale: float = 1.0) -> np.ndarray:
    """Closed-form gradient of the binary model.

    Order (G, L_FP, L_FN, C, P_FP, P_FN, P_TP, T). The paper-compat earnings
    variant charges twice the transaction cost inside each non-true-negative
    term, which shows up as the (2*sum + 1) factor on the cost derivatives.
    """
    _check_target(target)
    if variant not in ("canonical", "paper-compat"):
        raise ValidationError(f"unknown variant {variant!r}", field="variant",
                              value=variant)
    v = _as_values(point, 8)
    _check_binary_point(v)
    g, lfp, lfn, c, pfp, pfn, ptp, t = v
    s = cost_scale
    if target == TARGET_EARNINGS:
        if variant == "canonical":
            return np.array([ptp, -pfp, -pfn, -t * s, -lfp, -lfn, g, -c * s])
        ct = c * t * s
        m = 2.0 * (ptp + pfn + pfp) + 1.0
        return np.array([
            ptp, -pfp, -pfn, -t * s * m,
            -(lfp + 2.0 * ct), -(lfn + 2.0 * ct), g - 2.0 * ct, -c * s * m,
        ])
    ct = _cost(c, t, s, target)
    kb = g * ptp - lfn * pfn - lfp * pfp
    ct2 = ct * ct
    grad = np.array([
        ptp / ct,
        -pfp / ct,
        -pfn / ct,
        -kb * t * s / ct2,
        -lfp / ct,
        -lfn / ct,
        g / ct,
        -kb * c * s / ct2,
    ])
    if variant == "paper-compat":
        # ratio form adds an affine -2*(p_tp + p_fn + p_fp) term
        grad[4] -= 2.0
        grad[5] -= 2.0
        grad[6] -= 2.0
    return grad


def hessian_binary(point, target: str = TARGET_EARNINGS,
                   variant: str = "canonical",
                   cost_scale: float = 1.0) -> np.ndarray:
    """Closed-form Hessian of the binary model.

    For the ratio target the two variants share one Hessian (they differ by
    an affine function). The paper-compat earnings Hessian has 10 nonzero
    symmetric pairs; the canonical earnings Hessian has 4.
    """
    _check_target(target)
    if variant not in ("canonical", "paper-compat"):
        raise ValidationError(f"unknown variant {variant!r}", field="variant",
                              value=variant)
    v = _as_values(point, 8)
    _check_binary_point(v)
    g, lfp, lfn, c, pfp, pfn, ptp, t = v
    s = cost_scale
    iG, iLFP, iLFN, iC, iPFP, iPFN, iPTP, iT = range(8)
    h = np.zeros((8, 8))
    if target == TARGET_EARNINGS:
        h[iG, iPTP] = h[iPTP, iG] = 1.0
        h[iLFP, iPFP] = h[iPFP, iLFP] = -1.0
        h[iLFN, iPFN] = h[iPFN, iLFN] = -1.0
        if variant == "canonical":
            h[iC, iT] = h[iT, iC] = -s
            return h
        m = 2.0 * (ptp + pfn + pfp) + 1.0
        h[iC, iT] = h[iT, iC] = -s * m
        for ip in (iPFP, iPFN, iPTP):
            h[iC, ip] = h[ip, iC] = -2.0 * t * s
            h[iT, ip] = h[ip, iT] = -2.0 * c * s
        return h
    ct = _cost(c, t, s, target)
    kb = g * ptp - lfn * pfn - lfp * pfp
    ct2 = ct * ct
    ct3 = ct2 * ct
    y = 1.0 / ct
    h[iG, iPTP] = h[iPTP, iG] = y
    h[iLFP, iPFP] = h[iPFP, iLFP] = -y
    h[iLFN, iPFN] = h[iPFN, iLFN] = -y
    ts, cs = t * s, c * s
    h[iG, iC] = h[iC, iG] = -ptp * ts / ct2
    h[iG, iT] = h[iT, iG] = -ptp * cs / ct2
    h[iLFP, iC] = h[iC, iLFP] = pfp * ts / ct2
    h[iLFP, iT] = h[iT, iLFP] = pfp * cs / ct2
    h[iLFN, iC] = h[iC, iLFN] = pfn * ts / ct2
    h[iLFN, iT] = h[iT, iLFN] = pfn * cs / ct2
    h[iC, iPFP] = h[iPFP, iC] = lfp * ts / ct2
    h[iC, iPFN] = h[iPFN, iC] = lfn * ts / ct2
    h[iC, iPTP] = h[iPTP, iC] = -g * ts / ct2
    h[iT, iPFP] = h[iPFP, iT] = lfp * cs / ct2
    h[iT, iPFN] = h[iPFN, iT] = lfn * cs / ct2
    h[iT, iPTP] = h[iPTP, iT] = -g * cs / ct2
    h[iC, iC] = 2.0 * kb * ts * ts / ct3
    h[iT, iT] = 2.0 * kb * cs * cs / ct3
    h[iC, iT] = h[iT, iC] = kb * s / ct2
    return h


def finite_difference_gradient(evaluator: Callable[[np.ndarray], float],
                               point, relative_step: float = 1e-6) -> np.ndarray:
    """Central-difference gradient; the oracle for the analytic formulas.

    Per-coordinate step is ``relative_step * max(|x_i|, 1)``, exact for
    affine functions.
    """
    if not 0.0 < relative_step <= 1e-2:
        raise ValidationError(
            f"relative_step must be in (0, 1e-2], got {relative_step}",
            field="relative_step", value=relative_step)
    x = np.asarray(point.array if isinstance(point, ParameterVector) else point,
                   dtype=np.float64)
    grad = np.empty_like(x)
    for i in range(x.size):
        h = relative_step * max(abs(x[i]), 1.0)
        probe_hi = x.copy()
        probe_hi[i] += h
        probe_lo = x.copy()
        probe_lo[i] -= h
        try:
            f_hi = evaluator(probe_hi)
            f_lo = evaluator(probe_lo)
        except Exception as exc:
            raise EngineError(
                f"evaluator failed near probe point {probe_hi.tolist()}") from exc
        grad[i] = (f_hi - f_lo) / (2.0 * h)
    return grad


def finite_difference_hessian(gradient_fn: Callable[[np.ndarray], np.ndarray],
                              point, relative_step: float = 1e-6) -> np.ndarray:
    """Central differences of a gradient function, row i = d(grad)/dx_i."""
    x = np.asarray(point.array if isinstance(point, ParameterVector) else point,
                   dtype=np.float64)
    n = x.size
    hess = np.empty((n, n))
    for i in range(n):
        h = relative_step * max(abs(x[i]), 1.0)
        probe_hi = x.copy()
        probe_hi[i] += h
        probe_lo = x.copy()
        probe_lo[i] -= h
        hess[i] = (gradient_fn(probe_hi) - gradient_fn(probe_lo)) / (2.0 * h)
    return hess


def scalar_evaluator(model: str, target: str, cost_scale: float = 1.0,
                     variant: str = "canonical") -> Callable[[np.ndarray], float]:
    """Single-point evaluator backed by the batch kernels.

    Using the kernels keeps the finite-difference oracle and the global
    sensitivity analysis on exactly the same arithmetic.
    """
    from ..kernels import get_kernels
    kernels = get_kernels()
    if model == MODEL_SINGLE:
        fn = kernels.single_earnings if target == TARGET_EARNINGS else kernels.single_roi
    elif model == MODEL_BINARY_CANONICAL or (model == "binary" and variant == "canonical"):
        fn = (kernels.binary_earnings_canonical if target == TARGET_EARNINGS
              else kernels.binary_roi_canonical)
    elif model == MODEL_BINARY_COMPAT or (model == "binary" and variant == "paper-compat"):
        fn = (kernels.binary_earnings_compat if target == TARGET_EARNINGS
              else kernels.binary_roi_compat)
    else:
        raise ValidationError(f"unknown model {model!r}", field="model", value=model)

    def evaluate(x: np.ndarray) -> float:
        row = np.ascontiguousarray(np.asarray(x, dtype=np.float64)[None, :])
        out = np.empty(1)
        fn(row, out, cost_scale)
        return float(out[0])

    return evaluate


def local_report(point: ParameterVector, model: str,
                 target: str = TARGET_EARNINGS, variant: str = "canonical",
                 cost_scale: float = 1.0,
                 relative_step: float = 1e-6) -> LocalSensitivity:
    """Gradient + Hessian at a point, with the finite-difference residual.

    The residual is the largest relative deviation between the analytic
    gradient and its central-difference estimate.
    """
    if model not in MODELS:
        raise ValidationError(f"model must be one of {MODELS}, got {model!r}",
                              field="model", value=model)
    if model == MODEL_SINGLE:
        grad = gradient_single(point, target, cost_scale)
        hess = hessian_single(point, target, cost_scale)
        evaluator = scalar_evaluator(MODEL_SINGLE, target, cost_scale)
    else:
        variant = "canonical" if model == MODEL_BINARY_CANONICAL else "paper-compat"
        grad = gradient_binary(point, target, variant, cost_scale)
        hess = hessian_binary(point, target, variant, cost_scale)
        evaluator = scalar_evaluator(model, target, cost_scale, variant)
    fd = finite_difference_gradient(evaluator, point, relative_step)
    deviation = float(np.max(np.abs(grad - fd) / np.maximum(np.abs(grad), 1.0)))
    return LocalSensitivity(
        gradient=tuple(float(v) for v in grad),
        hessian=tuple(tuple(float(v) for v in row) for row in hess),
        evaluated_at=point,
        target=target,
        model=model,
        fd_max_relative_deviation=deviation,
    )
