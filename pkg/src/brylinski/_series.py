"""Batched truncated Taylor series in one and two variables.

One-variable series are arrays ``(..., n + 1)`` holding the coefficients of
``x**0 .. x**n``.  Two-variable series are arrays ``(..., n + 1, n + 1)``
where ``[i, j]`` multiplies ``x**i y**j``; entries with ``i + j > n`` are
kept at zero.  All leading axes broadcast.
"""

from __future__ import annotations

from math import factorial

import numpy as np


# --- one variable ----------------------------------------------------------

def mul1(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.result_type(a, b))
    for i in range(n):
        out[..., i:] += a[..., i : i + 1] * b[..., : n - i]
    return out


def pow1(a: np.ndarray, e: float) -> np.ndarray:
    """``a**e`` for a series with non-zero constant term (Miller's recurrence)."""
    n = a.shape[-1]
    out = np.zeros_like(a, dtype=float)
    a0 = a[..., 0]
    out[..., 0] = a0**e
    for k in range(1, n):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + ((e + 1) * j - k) * a[..., j] * out[..., k - j]
        out[..., k] = acc / (k * a0)
    return out


def deriv1(a: np.ndarray) -> np.ndarray:
    """Derivative, truncated one order lower."""
    n = a.shape[-1]
    return a[..., 1:] * np.arange(1, n)


def compose1(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``f(g(x))`` for ``g`` without constant term (Horner)."""
    n = f.shape[-1]
    out = np.zeros(np.broadcast_shapes(f.shape, g.shape))
    for k in range(n - 1, -1, -1):
        out = mul1(out, g)
        out[..., 0] += f[..., k]
    return out


def revert1(u: np.ndarray) -> np.ndarray:
    """Series inverse ``t(x)`` with ``u(t(x)) = x``; needs ``u0 = 0, u1 != 0``."""
    n = u.shape[-1]
    u1 = u[..., 1:2]
    nonlin = u.copy()
    nonlin[..., :2] = 0.0
    x = np.zeros_like(u)
    x[..., 1] = 1.0
    t = x / u1
    for _ in range(n - 1):
        t = (x - compose1(nonlin, t)) / u1
    return t


def taylor_from_derivatives(d: np.ndarray) -> np.ndarray:
    """Turn derivatives ``(..., n + 1)`` at a point into Taylor coefficients."""
    n = d.shape[-1]
    return d / np.array([factorial(k) for k in range(n)], dtype=float)


# --- two variables ---------------------------------------------------------

def _mask(n: int) -> np.ndarray:
    i, j = np.indices((n + 1, n + 1))
    return (i + j) <= n


def mul2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1] - 1
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for i in range(n + 1):
        for j in range(n + 1 - i):
            ai = a[..., i, j]
            if not np.any(ai):
                continue
            for k in range(n + 1 - i - j):
                out[..., i + k, j : n + 1 - i - k] += ai[..., None] * b[..., k, : n + 1 - i - j - k]
    return out


def compose2(f: np.ndarray, g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
    """``f(g1, g2)`` for ``g1, g2`` without constant terms."""
    n = f.shape[-1] - 1
    shape = np.broadcast_shapes(f.shape, g1.shape, g2.shape)
    one = np.zeros(shape)
    one[..., 0, 0] = 1.0
    p1 = [one]
    p2 = [one]
    for _ in range(n):
        p1.append(mul2(p1[-1], g1))
        p2.append(mul2(p2[-1], g2))
    out = np.zeros(shape)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            c = f[..., i, j]
            if np.any(c):
                out += c[..., None, None] * mul2(p1[i], p2[j])
    return out


def revert2(u1: np.ndarray, u2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Invert the map ``(x, y) -> (u1, u2)`` (both without constant term).

    Returns series ``x(v1, v2), y(v1, v2)`` with ``u(x(v), y(v)) = v``.
    """
    n = u1.shape[-1] - 1
    lin = np.stack(
        [np.stack([u1[..., 1, 0], u1[..., 0, 1]], -1), np.stack([u2[..., 1, 0], u2[..., 0, 1]], -1)], -2
    )
    inv = np.linalg.inv(lin)
    n1 = u1.copy()
    n2 = u2.copy()
    for s in (n1, n2):
        s[..., 1, 0] = 0.0
        s[..., 0, 1] = 0.0
    shape = np.broadcast_shapes(u1.shape, u2.shape)
    v1 = np.zeros(shape)
    v1[..., 1, 0] = 1.0
    v2 = np.zeros(shape)
    v2[..., 0, 1] = 1.0
    x = np.zeros(shape)
    y = np.zeros(shape)
    for _ in range(n):
        r1 = v1 - compose2(n1, x, y)
        r2 = v2 - compose2(n2, x, y)
        x = inv[..., 0, 0, None, None] * r1 + inv[..., 0, 1, None, None] * r2
        y = inv[..., 1, 0, None, None] * r1 + inv[..., 1, 1, None, None] * r2
    m = _mask(n)
    return x * m, y * m


def taylor2_from_partials(d: np.ndarray) -> np.ndarray:
    """Partials ``[..., i, j] = d^{i+j}/dx^i dy^j`` to Taylor coefficients."""
    n = d.shape[-1] - 1
    fact = np.array([factorial(k) for k in range(n + 1)], dtype=float)
    return d / np.outer(fact, fact) * _mask(n)
