"""Hot numeric kernels with optional numba acceleration.

The azimuthal plane-wave superposition over a spatial grid dominates runtime
for field synthesis, so it gets a compiled kernel.  Set
TWISTATOM_DISABLE_NUMBA=1 to force the pure-numpy path (also used when numba
is not installed).  benchmarks/bench_kernels.py compares the two.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("TWISTATOM_DISABLE_NUMBA", "").strip() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit, prange
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _superposition_numpy(x, y, kappa, weights, cos_phi, sin_phi, eps):
    """Sum_j eps[j, :] * weights[j] * exp(i kappa (x cos_phi_j + y sin_phi_j)).

    x, y: flat arrays of n points; eps: (n_phi, 3) complex; returns (n, 3).
    """
    phase = np.exp(1j * kappa * (np.outer(x, cos_phi) + np.outer(y, sin_phi)))
    return phase @ (weights[:, None] * eps)


if HAS_NUMBA:

    @njit(parallel=True, cache=True)
    def _superposition_numba(x, y, kappa, weights, cos_phi, sin_phi, eps):
        n = x.shape[0]
        n_phi = cos_phi.shape[0]
        out = np.zeros((n, 3), dtype=np.complex128)
        for i in prange(n):
            a0 = 0.0 + 0.0j
            a1 = 0.0 + 0.0j
            a2 = 0.0 + 0.0j
            for j in range(n_phi):
                arg = kappa * (x[i] * cos_phi[j] + y[i] * sin_phi[j])
                ph = weights[j] * (np.cos(arg) + 1j * np.sin(arg))
                a0 += ph * eps[j, 0]
                a1 += ph * eps[j, 1]
                a2 += ph * eps[j, 2]
            out[i, 0] = a0
            out[i, 1] = a1
            out[i, 2] = a2
        return out

    superposition_sum = _superposition_numba
else:
    superposition_sum = _superposition_numpy


def superposition_sum_numpy(x, y, kappa, weights, cos_phi, sin_phi, eps):
    """Reference numpy path, always available (used by the benchmark)."""
    return _superposition_numpy(x, y, kappa, weights, cos_phi, sin_phi, eps)
