"""GF(2) elimination kernels.

Rows are bit-packed into uint16 words (14 bits in use), so a row XOR is
one machine-word XOR. Two interchangeable kernels compute the reduced
row echelon form: a numba-jitted scalar loop and a vectorized pure-numpy
fallback. Selection is controlled by the QUOTIENT_GF2_BACKEND
environment variable: "auto" (default) prefers numba when importable,
"numba" requires it, "numpy" forces the fallback.
"""

from __future__ import annotations

import logging
import os
from typing import Callable, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

BACKEND_ENV = "QUOTIENT_GF2_BACKEND"
_BACKENDS = ("auto", "numba", "numpy")

_numba_eliminate: Callable | None = None


def _eliminate_loops(work: np.ndarray, n_cols: int, pivots: np.ndarray) -> int:
    # Shared scalar implementation; jitted by numba, also runs untyped.
    n = work.shape[0]
    npiv = 0
    r = 0
    for col in range(n_cols):
        bit = np.uint16(1 << col)
        pivot = -1
        for i in range(r, n):
            if work[i] & bit:
                pivot = i
                break
        if pivot < 0:
            continue
        tmp = work[r]
        work[r] = work[pivot]
        work[pivot] = tmp
        pr = work[r]
        for i in range(n):
            if i != r and (work[i] & bit):
                work[i] ^= pr
        pivots[npiv] = col
        npiv += 1
        r += 1
    return npiv


def eliminate_numpy(words: np.ndarray, n_cols: int) -> Tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over GF(2), vectorized numpy.

    Returns (reduced words, pivot column indices). The input is not
    modified.
    """
    work = np.array(words, dtype=np.uint16, copy=True)
    n = work.shape[0]
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        bit = np.uint16(1 << col)
        hits = np.nonzero(work[r:] & bit)[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        work[[r, p]] = work[[p, r]]
        mask = (work & bit) != 0
        mask[r] = False
        work[mask] ^= work[r]
        pivots.append(col)
        r += 1
    return work, np.asarray(pivots, dtype=np.int64)


def eliminate_numba(words: np.ndarray, n_cols: int) -> Tuple[np.ndarray, np.ndarray]:
    """Same contract as eliminate_numpy, via the jitted kernel."""
    global _numba_eliminate
    if _numba_eliminate is None:
        import numba

        _numba_eliminate = numba.njit(cache=True)(_eliminate_loops)
    work = np.array(words, dtype=np.uint16, copy=True)
    pivots = np.empty(n_cols, dtype=np.int64)
    npiv = _numba_eliminate(work, n_cols, pivots)
    return work, pivots[:npiv].copy()


def resolve_backend() -> str:
    """Map the environment setting to a concrete backend name."""
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice not in _BACKENDS:
        raise ValueError(
            f"{BACKEND_ENV} must be one of {', '.join(_BACKENDS)}, got {choice!r}"
        )
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        logger.warning("numba unavailable, falling back to the numpy kernel")
        return "numpy"
    return "numba"


def eliminate(words: np.ndarray, n_cols: int) -> Tuple[np.ndarray, np.ndarray]:
    """Dispatch to the configured kernel."""
    if resolve_backend() == "numba":
        return eliminate_numba(words, n_cols)
    return eliminate_numpy(words, n_cols)
