"""NumPy evaluation kernels for batched scenario models.

Each kernel takes a C-contiguous (n, d) float64 matrix whose columns follow
the fixed variable order of the model, and writes n outputs into ``out``.

Column order, single model:  G, L, C, P, T
Column order, binary model:  G, L_FP, L_FN, C, P_FP, P_FN, P_TP, T

``cost_scale`` converts the sampled price variable C into currency per token
(1e-6 when C is priced per million tokens, 1.0 when it is already per token).

The arithmetic here is the reference for the compiled backend: the compiled
kernels must apply the same operations in the same order so that both
backends produce bit-identical results.
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def single_earnings(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, l, c, p, t = x[:, 0], x[:, 1], x[:, 2], x[:, 3], x[:, 4]
    ct = (c * t) * cost_scale
    out[:] = g * p - l * (1.0 - p) - ct


def single_roi(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, l, c, p, t = x[:, 0], x[:, 1], x[:, 2], x[:, 3], x[:, 4]
    ct = (c * t) * cost_scale
    out[:] = (g * p - l * (1.0 - p)) / ct - 1.0


def binary_earnings_canonical(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, lfp, lfn, c = x[:, 0], x[:, 1], x[:, 2], x[:, 3]
    pfp, pfn, ptp, t = x[:, 4], x[:, 5], x[:, 6], x[:, 7]
    ct = (c * t) * cost_scale
    out[:] = g * ptp - lfn * pfn - lfp * pfp - ct


def binary_roi_canonical(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, lfp, lfn, c = x[:, 0], x[:, 1], x[:, 2], x[:, 3]
    pfp, pfn, ptp, t = x[:, 4], x[:, 5], x[:, 6], x[:, 7]
    ct = (c * t) * cost_scale
    out[:] = (g * ptp - lfn * pfn - lfp * pfp) / ct - 1.0


def binary_earnings_compat(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, lfp, lfn, c = x[:, 0], x[:, 1], x[:, 2], x[:, 3]
    pfp, pfn, ptp, t = x[:, 4], x[:, 5], x[:, 6], x[:, 7]
    ct = (c * t) * cost_scale
    ct2 = 2.0 * ct
    out[:] = (g - ct2) * ptp - (lfn + ct2) * pfn - (lfp + ct2) * pfp - ct


def binary_roi_compat(x: np.ndarray, out: np.ndarray, cost_scale: float) -> None:
    g, lfp, lfn, c = x[:, 0], x[:, 1], x[:, 2], x[:, 3]
    pfp, pfn, ptp, t = x[:, 4], x[:, 5], x[:, 6], x[:, 7]
    ct = (c * t) * cost_scale
    ct2 = 2.0 * ct
    e = (g - ct2) * ptp - (lfn + ct2) * pfn - (lfp + ct2) * pfp - ct
    out[:] = e / ct
