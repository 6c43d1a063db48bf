"""Backend selection for the batched evaluation kernels.

Two interchangeable backends exist: ``pure`` (NumPy) and ``compiled``
(Cython extension). They are bit-identical by construction; the compiled
one is simply faster on large batches. Selection order:

1. explicit ``backend=`` argument to :func:`get_kernels`;
2. the ``LLM_ROI_BACKEND`` environment variable (``pure`` or ``compiled``);
3. automatic: compiled if the extension was built, else pure.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import pure

try:
    from . import _fast
except ImportError:  # extension not built; the pure backend covers everything
    _fast = None

_ENV_VAR = "LLM_ROI_BACKEND"

KERNEL_NAMES = (
    "single_earnings",
    "single_roi",
    "binary_earnings_canonical",
    "binary_roi_canonical",
    "binary_earnings_compat",
    "binary_roi_compat",
)


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _fast is not None else ("pure",)


def get_kernels(backend: str | None = None) -> ModuleType:
    """Return the kernel namespace for ``backend`` (or the configured default)."""
    if backend is None:
        backend = os.environ.get(_ENV_VAR) or ("compiled" if _fast is not None else "pure")
    if backend == "pure":
        return pure
    if backend == "compiled":
        if _fast is None:
            raise ImportError(
                "compiled kernel backend requested via "
                f"{'backend argument' if _ENV_VAR not in os.environ else _ENV_VAR} "
                "but the extension module is not built; install with a C compiler "
                "or use LLM_ROI_BACKEND=pure"
            )
        return _fast
    raise ValueError(f"unknown kernel backend {backend!r}; expected 'pure' or 'compiled'")


def active_backend() -> str:
    return get_kernels().NAME
