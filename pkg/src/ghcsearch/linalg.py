"""Exact row reduction over F_p.

The compiled kernel is used when it was built; set ``GHCSEARCH_PURE=1`` to
force the numpy implementation.  Both return identical results.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _rref_py

try:
    if os.environ.get("GHCSEARCH_PURE"):
        raise ImportError("pure backend requested")
    from . import _rref_ext as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _rref_py
    BACKEND = "python"

__all__ = ["BACKEND", "rref_mod_p", "rank_fp", "is_prime"]

_KERNELS = {"cython": _kernel if BACKEND == "cython" else None, "python": _rref_py}


def _get_kernel(backend: str | None):
    if backend is None:
        return _kernel
    kernel = _KERNELS.get(backend)
    if kernel is None:
        raise ValueError(f"backend {backend!r} is not available")
    return kernel


def rref_mod_p(
    matrix, p: int, reduced: bool = True, backend: str | None = None
) -> tuple[np.ndarray, list[int]]:
    """Echelon form of ``matrix`` over F_p.

    Returns ``(rows, pivots)`` where ``rows`` has one row per pivot, unit
    entries at the pivot columns and entries in ``[0, p)``.  With
    ``reduced`` the pivot columns are otherwise zero.
    """
    M = np.array(matrix, dtype=np.uint64, copy=True, order="C")
    if M.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if M.shape[0] == 0 or M.shape[1] == 0:
        return np.zeros((0, M.shape[1]), dtype=np.int64), []
    pivots = list(_get_kernel(backend).rref_inplace(M, p, reduced))
    return M[: len(pivots)].astype(np.int64), pivots


def rank_fp(vectors: Sequence[Sequence[int]] | np.ndarray, p: int, backend: str | None = None) -> int:
    M = np.asarray(vectors, dtype=np.int64)
    if M.size == 0:
        return 0
    if np.any(M < 0):
        M = M % p
    return len(rref_mod_p(M, p, reduced=False, backend=backend)[1])


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True
