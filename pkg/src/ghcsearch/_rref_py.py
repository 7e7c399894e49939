"""Numpy fallback for the compiled elimination kernel.

Produces exactly the same output as ``_rref_ext.rref_inplace``.
"""

from __future__ import annotations

import numpy as np


def rref_inplace(M: np.ndarray, p: int, reduced: bool = True) -> list[int]:
    if not 2 <= p < 2**31:
        raise ValueError("modulus must satisfy 2 <= p < 2**31")
    rows, cols = M.shape
    work = M.astype(np.int64) % p
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            work[[r, piv], c:] = work[[piv, r], c:]
        inv = pow(int(work[r, c]), -1, p)
        work[r, c:] = work[r, c:] * inv % p
        lo = 0 if reduced else r + 1
        col = work[lo:, c].copy()
        if not reduced:
            targets = np.flatnonzero(col)
        else:
            col[r] = 0
            targets = np.flatnonzero(col)
        if targets.size:
            idx = targets + lo
            f = (p - work[idx, c]) % p
            work[idx, c:] = (work[idx, c:] + f[:, None] * work[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    M[...] = work.astype(M.dtype)
    return pivots
