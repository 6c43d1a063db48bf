"""Variance-based global sensitivity analysis with Saltelli sampling.

The sample design draws a scrambled low-discrepancy sequence in 2D
dimensions, splits it into the base matrices A and B, and forms the
cross matrices A_B^(i) (A with column i from B) and, when second-order
indices are requested, B_A^(i). Estimators are the classic cross-matrix
family:

* first order:   S_i  = mean(f_B * (f_{A_B^i} - f_A)) / V
* total order:   S_Ti = mean((f_A - f_{A_B^i})^2) / (2 V)
* second order:  S_ij = mean(f_{B_A^i} * f_{A_B^j} - f_A * f_B) / V - S_i - S_j

with V the variance of the pooled A and B evaluations. All estimator inputs
are centered by the pooled mean for numerical conditioning; estimates may
fall slightly outside [0, 1] and are reported raw together with a
three-sigma noise bound.

Evaluation is chunked into fixed row blocks written to disjoint output
slices, and every reduction runs in a fixed order afterwards, so results
are bit-identical for any number of worker threads (``LLM_ROI_THREADS``).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy.stats import qmc

from ..errors import (
    DegenerateModelError,
    NonFiniteOutputError,
    ValidationError,
)
from . import models as _models

_CHUNK_ROWS = 32768
_THREADS_ENV = "LLM_ROI_THREADS"


def _worker_count(workers: int | None) -> int:
    if workers is None:
        raw = os.environ.get(_THREADS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise ValidationError(
                f"{_THREADS_ENV} must be an integer, got {raw!r}",
                field=_THREADS_ENV, value=raw)
    if workers < 1:
        raise ValidationError(f"worker count must be >= 1, got {workers}",
                              field="workers", value=workers)
    return workers


def _normalize_ranges(ranges) -> dict[str, tuple[float, float]]:
    if isinstance(ranges, Mapping):
        items = list(ranges.items())
    else:
        items = [(name, bounds) for name, bounds in ranges]
    if not items:
        raise ValidationError("ranges must not be empty", field="ranges")
    out: dict[str, tuple[float, float]] = {}
    for name, bounds in items:
        try:
            lo, hi = float(bounds[0]), float(bounds[1])
        except (TypeError, ValueError, IndexError):
            raise ValidationError(f"range for {name} must be a (min, max) pair",
                                  field=f"ranges.{name}", value=bounds)
        if not lo < hi:
            raise ValidationError(
                f"range for {name} must satisfy min < max, got ({lo}, {hi})",
                field=f"ranges.{name}", value=bounds)
        if name in out:
            raise ValidationError(f"duplicate variable {name!r}", field="ranges")
        out[name] = (lo, hi)
    return out


@dataclass(frozen=True)
class SobolSpec:
    """Everything that determines one global sensitivity analysis.

    ``model`` is a registered model name or a callable mapping an (n, d)
    matrix to n outputs. ``ranges`` defaults to the named model's standard
    box. ``variant`` and ``cost_units`` only apply to named scenario models.
    """

    model: str | Callable[[np.ndarray], np.ndarray]
    ranges: Mapping[str, tuple[float, float]] | None = None
    base_samples: int = 2 ** 16
    second_order: bool = False
    seed: int = 1
    bootstrap_resamples: int = 0
    variant: str = "paper-compat"
    cost_units: str = _models.COST_UNITS_PER_MILLION

    def resolved_ranges(self) -> dict[str, tuple[float, float]]:
        if self.ranges is None:
            if callable(self.model):
                raise ValidationError(
                    "ranges are required for a callable model", field="ranges")
            ranges = _models.default_ranges(self.model)
        else:
            ranges = _normalize_ranges(self.ranges)
        if isinstance(self.model, str):
            expected = _models.model_variables(self.model)
            if set(ranges) != set(expected):
                raise ValidationError(
                    f"model {self.model!r} requires ranges for exactly {expected}, "
                    f"got {tuple(ranges)}", field="ranges")
            ranges = {name: ranges[name] for name in expected}
            if self.model in (_models.MODEL_BINARY_EARNINGS, _models.MODEL_BINARY_ROI):
                _models.validate_binary_ranges(ranges)
        return ranges

    def __post_init__(self):
        if not callable(self.model) and self.model not in _models.MODEL_NAMES:
            raise ValidationError(
                f"model must be callable or one of {_models.MODEL_NAMES}, "
                f"got {self.model!r}", field="model", value=self.model)
        if not isinstance(self.base_samples, int) or self.base_samples < 8:
            raise ValidationError(
                f"base_samples must be an integer >= 8, got {self.base_samples!r}",
                field="base_samples", value=self.base_samples)
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValidationError(
                f"seed must be a nonnegative integer, got {self.seed!r}",
                field="seed", value=self.seed)
        if self.bootstrap_resamples < 0:
            raise ValidationError("bootstrap_resamples must be >= 0",
                                  field="bootstrap_resamples",
                                  value=self.bootstrap_resamples)
        self.resolved_ranges()

    @property
    def dimension(self) -> int:
        return len(self.resolved_ranges())

    @property
    def evaluation_budget(self) -> int:
        d = self.dimension
        per_base = (2 * d + 2) if self.second_order else (d + 2)
        return self.base_samples * per_base


@dataclass(frozen=True)
class SobolIndices:
    """Estimated sensitivity indices and their bookkeeping.

    ``second_order`` is a full symmetric matrix (zero diagonal) when the
    analysis requested it, else ``None``. ``noise_bound`` is a three-sigma
    bound on the first/total-order estimates derived from the estimator
    term variances; indices are raw and may exceed [0, 1] by up to roughly
    this bound.
    """

    variables: tuple[str, ...]
    first_order: tuple[float, ...]
    total_order: tuple[float, ...]
    second_order: tuple[tuple[float, ...], ...] | None
    output_variance: float
    evaluations_used: int
    noise_bound: float
    confidence_intervals: dict | None = None


@dataclass(frozen=True)
class SaltelliDesign:
    """Base matrices plus on-demand cross-matrix chunks.

    Logical matrix order is A, B, A_B^(0..d-1), then B_A^(0..d-1) when
    second-order sampling was requested. Cross matrices are materialized
    per chunk to keep memory proportional to the base sample, not to the
    full evaluation budget.
    """

    a: np.ndarray
    b: np.ndarray
    second_order: bool
    seed: int

    @property
    def base_samples(self) -> int:
        return self.a.shape[0]

    @property
    def dimension(self) -> int:
        return self.a.shape[1]

    @property
    def matrix_count(self) -> int:
        return (2 * self.dimension + 2) if self.second_order else (self.dimension + 2)

    @property
    def total_rows(self) -> int:
        return self.base_samples * self.matrix_count

    def matrix_label(self, index: int) -> str:
        d = self.dimension
        if index == 0:
            return "A"
        if index == 1:
            return "B"
        if 2 <= index < 2 + d:
            return f"AB{index - 2}"
        return f"BA{index - 2 - d}"

    def chunk(self, index: int, lo: int, hi: int) -> np.ndarray:
        """Rows [lo, hi) of logical matrix ``index`` as a contiguous block."""
        d = self.dimension
        if index == 0:
            return self.a[lo:hi]
        if index == 1:
            return self.b[lo:hi]
        if 2 <= index < 2 + d:
            i = index - 2
            block = self.a[lo:hi].copy()
            block[:, i] = self.b[lo:hi, i]
            return block
        if self.second_order and 2 + d <= index < 2 + 2 * d:
            i = index - 2 - d
            block = self.b[lo:hi].copy()
            block[:, i] = self.a[lo:hi, i]
            return block
        raise IndexError(f"matrix index {index} out of range")


def saltelli_sample(ranges, base_samples: int, second_order: bool,
                    seed: int) -> SaltelliDesign:
    """Draw the Saltelli design over the given variable box.

    A scrambled 2D-dimensional low-discrepancy sequence is split columnwise
    into A and B, making the design deterministic in ``seed``. Powers of two
    for ``base_samples`` preserve the sequence's balance properties.
    """
    bounds = _normalize_ranges(ranges)
    if base_samples < 8:
        raise ValidationError(f"base_samples must be >= 8, got {base_samples}",
                              field="base_samples", value=base_samples)
    d = len(bounds)
    sampler = qmc.Sobol(d=2 * d, scramble=True, seed=seed)
    unit = sampler.random(base_samples)
    lows = np.array([lo for lo, _ in bounds.values()])
    spans = np.array([hi - lo for lo, hi in bounds.values()])
    a = np.ascontiguousarray(lows + unit[:, :d] * spans)
    b = np.ascontiguousarray(lows + unit[:, d:] * spans)
    return SaltelliDesign(a=a, b=b, second_order=second_order, seed=seed)


def _evaluate_design(design: SaltelliDesign, evaluator: _models.Evaluator,
                     workers: int,
                     on_progress: Callable[[float], None] | None) -> list[np.ndarray]:
    n = design.base_samples
    outputs = [np.empty(n) for _ in range(design.matrix_count)]
    tasks = [(mi, lo, min(lo + _CHUNK_ROWS, n))
             for mi in range(design.matrix_count)
             for lo in range(0, n, _CHUNK_ROWS)]
    total = design.total_rows
    done_rows = 0

    def run(task: tuple[int, int, int]) -> int:
        mi, lo, hi = task
        block = design.chunk(mi, lo, hi)
        out = outputs[mi][lo:hi]
        evaluator(block, out)
        bad = np.flatnonzero(~np.isfinite(out))
        if bad.size:
            row = block[bad[0]]
            raise NonFiniteOutputError(
                f"model produced a non-finite value at sample row {row.tolist()} "
                f"(matrix {design.matrix_label(mi)}, row {lo + int(bad[0])})",
                row=row.copy())
        return hi - lo

    if workers == 1:
        for task in tasks:
            done_rows += run(task)
            if on_progress is not None:
                on_progress(done_rows / total)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run, task) for task in tasks]
            try:
                for future in futures:
                    done_rows += future.result()
                    if on_progress is not None:
                        on_progress(done_rows / total)
            except BaseException:
                for f in futures:
                    f.cancel()
                raise
    return outputs


def _resolve_callable(spec: SobolSpec,
                      backend: str | None) -> _models.Evaluator:
    if callable(spec.model):
        model = spec.model

        def evaluate(x: np.ndarray, out: np.ndarray) -> None:
            result = np.asarray(model(x), dtype=np.float64)
            if result.shape != (x.shape[0],):
                raise ValidationError(
                    f"model returned shape {result.shape}, expected ({x.shape[0]},)",
                    field="model")
            out[:] = result

        return evaluate
    return _models.resolve_evaluator(spec.model, spec.variant, spec.cost_units,
                                     backend)


def sobol_analyze(spec: SobolSpec, *, workers: int | None = None,
                  on_progress: Callable[[float], None] | None = None,
                  backend: str | None = None) -> SobolIndices:
    """Estimate first-, total-, and optionally second-order indices.

    ``workers`` defaults to the LLM_ROI_THREADS environment variable (1 if
    unset); any worker count produces bit-identical results. ``on_progress``
    receives the evaluated-row fraction after each chunk.
    """
    ranges = spec.resolved_ranges()
    names = tuple(ranges)
    d = len(names)
    n = spec.base_samples
    workers = _worker_count(workers)
    design = saltelli_sample(ranges, n, spec.second_order, spec.seed)
    evaluator = _resolve_callable(spec, backend)
    outputs = _evaluate_design(design, evaluator, workers, on_progress)

    f_a, f_b = outputs[0], outputs[1]
    f_ab = outputs[2:2 + d]
    f_ba = outputs[2 + d:] if spec.second_order else []

    pooled_mean = float(np.mean(np.concatenate((f_a, f_b))))
    a_c = f_a - pooled_mean
    b_c = f_b - pooled_mean
    ab_c = [f - pooled_mean for f in f_ab]
    ba_c = [f - pooled_mean for f in f_ba]
    variance = float((np.sum(a_c * a_c) + np.sum(b_c * b_c)) / (2 * n))
    if variance == 0.0:
        raise DegenerateModelError(
            "model output is constant over the sampled box; indices are undefined")

    first = np.empty(d)
    total = np.empty(d)
    se_first = np.empty(d)
    se_total = np.empty(d)
    for i in range(d):
        t1 = b_c * (ab_c[i] - a_c)
        t2 = 0.5 * (a_c - ab_c[i]) ** 2
        first[i] = np.mean(t1) / variance
        total[i] = np.mean(t2) / variance
        se_first[i] = np.std(t1) / (variance * np.sqrt(n))
        se_total[i] = np.std(t2) / (variance * np.sqrt(n))
    noise_bound = float(3.0 * np.max(se_first + se_total))

    second = None
    if spec.second_order:
        matrix = np.zeros((d, d))
        for i in range(d):
            for j in range(i + 1, d):
                closed = np.mean(ba_c[i] * ab_c[j] - a_c * b_c) / variance
                matrix[i, j] = matrix[j, i] = closed - first[i] - first[j]
        second = tuple(tuple(float(v) for v in row) for row in matrix)

    intervals = None
    if spec.bootstrap_resamples > 0:
        intervals = _bootstrap_intervals(spec, a_c, b_c, ab_c, ba_c)

    return SobolIndices(
        variables=names,
        first_order=tuple(float(v) for v in first),
        total_order=tuple(float(v) for v in total),
        second_order=second,
        output_variance=variance,
        evaluations_used=design.total_rows,
        noise_bound=noise_bound,
        confidence_intervals=intervals,
    )


def _bootstrap_intervals(spec: SobolSpec, a_c, b_c, ab_c, ba_c) -> dict:
    """Percentile confidence intervals from row resampling."""
    n = a_c.shape[0]
    d = len(ab_c)
    resamples = spec.bootstrap_resamples
    rng = np.random.default_rng([spec.seed, 0xB00751])
    firsts = np.empty((resamples, d))
    totals = np.empty((resamples, d))
    seconds = np.empty((resamples, d, d)) if ba_c else None
    for r in range(resamples):
        idx = rng.integers(0, n, size=n)
        ar, br = a_c[idx], b_c[idx]
        abr = [f[idx] for f in ab_c]
        variance = (np.sum(ar * ar) + np.sum(br * br)) / (2 * n)
        if variance == 0.0:
            variance = np.inf  # degenerate resample contributes zero indices
        for i in range(d):
            firsts[r, i] = np.mean(br * (abr[i] - ar)) / variance
            totals[r, i] = 0.5 * np.mean((ar - abr[i]) ** 2) / variance
        if seconds is not None:
            bar = [f[idx] for f in ba_c]
            for i in range(d):
                for j in range(i + 1, d):
                    closed = np.mean(bar[i] * abr[j] - ar * br) / variance
                    seconds[r, i, j] = closed - firsts[r, i] - firsts[r, j]
                    seconds[r, j, i] = seconds[r, i, j]
    lo, hi = 2.5, 97.5

    def bounds(samples: np.ndarray) -> tuple[float, float]:
        return (float(np.percentile(samples, lo)), float(np.percentile(samples, hi)))

    out = {
        "first_order": [bounds(firsts[:, i]) for i in range(d)],
        "total_order": [bounds(totals[:, i]) for i in range(d)],
    }
    if seconds is not None:
        out["second_order"] = [
            {"i": i, "j": j, "low": bounds(seconds[:, i, j])[0],
             "high": bounds(seconds[:, i, j])[1]}
            for i in range(d) for j in range(i + 1, d)
        ]
    return out
