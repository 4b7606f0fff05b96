"""Row sums of the layer kernels: numba kernels with a pure-numpy fallback.

Backend selection: ``BRYLINSKI_BACKEND=numpy`` forces numpy, anything else
(default ``numba``) uses the JIT kernels when numba imports.  The variable is
read on every call so tests can switch it.

Each function reduces ``sum_j W[i, j] * k(D[i, j])`` for every outer row
``i``, where ``D[i, j] = X[i, j] - P[i]`` is the chord from the outer point to
an inner point (passed in precomputed so that short chords keep full relative
accuracy).  Arrays: ``D (m, n, d)``, ``NP (m, d)``, ``NX (m, n, d)``,
``W (m, n)``.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def backend() -> str:
    if os.environ.get("BRYLINSKI_BACKEND", "numba").lower() == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


# --- numpy ---------------------------------------------------------------------

def _double_rows_numpy(dx, NP, NX, W, s):
    r2 = np.einsum("ijk,ijk->ij", dx, dx)
    rs = np.exp(s * 0.5 * np.log(r2))
    a = np.einsum("ijk,ik->ij", dx, NP)
    b = np.einsum("ijk,ijk->ij", dx, NX)
    c = np.einsum("ik,ijk->ij", NP, NX)
    k = -s * (s - 2) * rs / (r2 * r2) * a * b - s * rs / r2 * c
    return np.sum(W * k, axis=1)


def _single_rows_numpy(dx, W, s):
    r2 = np.einsum("ijk,ijk->ij", dx, dx)
    return np.sum(W * np.exp(s * 0.5 * np.log(r2)), axis=1)


# --- numba ---------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _real_power(log_r, sr, si):
        # exp(s log r) from a real magnitude and a phase; no trig for real s
        mag = math.exp(sr * log_r)
        if si == 0.0:
            return complex(mag, 0.0)
        ph = si * log_r
        return complex(mag * math.cos(ph), mag * math.sin(ph))

    @njit(cache=True)
    def _double_rows_numba(D, NP, NX, W, s):
        m, n, d = D.shape
        out = np.zeros(m, dtype=np.complex128)
        s2 = s * (s - 2.0)
        for i in range(m):
            first = 0.0 + 0.0j
            second = 0.0 + 0.0j
            for j in range(n):
                r2 = 0.0
                a = 0.0
                b = 0.0
                c = 0.0
                for k in range(d):
                    dk = D[i, j, k]
                    r2 += dk * dk
                    a += dk * NP[i, k]
                    b += dk * NX[i, j, k]
                    c += NP[i, k] * NX[i, j, k]
                rs = _real_power(0.5 * math.log(r2), s.real, s.imag)
                inv = W[i, j] / r2
                first += rs * (inv / r2 * (a * b))
                second += rs * (inv * c)
            out[i] = -s2 * first - s * second
        return out

    @njit(cache=True)
    def _single_rows_numba(D, W, s):
        m, n, d = D.shape
        out = np.zeros(m, dtype=np.complex128)
        for i in range(m):
            acc = 0.0 + 0.0j
            for j in range(n):
                r2 = 0.0
                for k in range(d):
                    dk = D[i, j, k]
                    r2 += dk * dk
                acc += W[i, j] * _real_power(0.5 * math.log(r2), s.real, s.imag)
            out[i] = acc
        return out


def double_layer_rows(D, NP, NX, W, s) -> np.ndarray:
    s = complex(s)
    c = np.ascontiguousarray
    if backend() == "numba":
        return _double_rows_numba(c(D), c(NP), c(NX), c(W), s)
    return _double_rows_numpy(D, NP, NX, W, s)


def single_layer_rows(D, W, s) -> np.ndarray:
    s = complex(s)
    if backend() == "numba":
        return _single_rows_numba(np.ascontiguousarray(D), np.ascontiguousarray(W), s)
    return _single_rows_numpy(D, W, s)
