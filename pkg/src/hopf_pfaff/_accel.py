"""Weighted box enumeration kernels for resonant section spaces.

Enumerates integer vectors ``alpha`` with ``0 <= alpha <= caps``,
``sum(alpha * weights) <= budget`` and ``M @ alpha == target`` in
lexicographic order. Two interchangeable backends:

* ``numba``: iterative depth-first search, compiled with ``@njit(nogil=True)``
  so several index tuples can be enumerated on threads concurrently.
* ``numpy``: breadth-first extension one coordinate at a time with vectorized
  pruning, then a vectorized exact filter.

Set ``HOPF_PFAFF_NUMBA=0`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

NUMBA_AVAILABLE = njit is not None
_USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("HOPF_PFAFF_NUMBA", "1") != "0"


def backend() -> str:
    return "numba" if _USE_NUMBA else "numpy"


def _enumerate_numpy(M, target, weights, budget, caps):
    n = weights.shape[0]
    cands = np.zeros((1, 0), dtype=np.int64)
    partial = np.zeros(1, dtype=np.float64)
    for i in range(n):
        vals = np.arange(caps[i] + 1, dtype=np.int64)
        grown = partial[:, None] + vals[None, :] * weights[i]
        rows, cols = np.nonzero(grown <= budget)
        cands = np.hstack([cands[rows], vals[cols][:, None]])
        partial = grown[rows, cols]
        if cands.shape[0] == 0:
            return np.zeros((0, n), dtype=np.int64)
    if M.shape[0] == 0:
        return cands
    hit = np.all(cands @ M.T == target[None, :], axis=1)
    return cands[hit]


def _enumerate_python(M, target, weights, budget, caps):
    # Reference DFS, shared source with the numba kernel.
    n = weights.shape[0]
    p = M.shape[0]
    out = np.empty((16, n), dtype=np.int64)
    count = 0
    alpha = np.zeros(n, dtype=np.int64)
    prefix = np.zeros(n + 1, dtype=np.float64)
    alpha[0] = -1
    i = 0
    while i >= 0:
        alpha[i] += 1
        w = prefix[i] + alpha[i] * weights[i]
        if alpha[i] > caps[i] or w > budget:
            i -= 1
            continue
        prefix[i + 1] = w
        if i < n - 1:
            i += 1
            alpha[i] = -1
            continue
        ok = True
        for r in range(p):
            s = 0
            for j in range(n):
                s += M[r, j] * alpha[j]
            if s != target[r]:
                ok = False
                break
        if ok:
            if count == out.shape[0]:
                grown = np.empty((2 * out.shape[0], n), dtype=np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = alpha
            count += 1
    return out[:count].copy()


if NUMBA_AVAILABLE:
    _enumerate_numba = njit(cache=True, nogil=True)(_enumerate_python)
else:  # pragma: no cover
    _enumerate_numba = None


def enumerate_weighted(M, target, weights, budget: float, caps, use_numba: bool | None = None) -> np.ndarray:
    """All lattice-filtered points of the weighted box, shape (count, n), lex order."""
    M = np.ascontiguousarray(M, dtype=np.int64).reshape(-1, len(weights))
    target = np.ascontiguousarray(target, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    caps = np.ascontiguousarray(caps, dtype=np.int64)
    if budget < 0:
        return np.zeros((0, weights.shape[0]), dtype=np.int64)
    if use_numba is None:
        use_numba = _USE_NUMBA
    if use_numba:
        return _enumerate_numba(M, target, weights, float(budget), caps)
    return _enumerate_numpy(M, target, weights, float(budget), caps)
