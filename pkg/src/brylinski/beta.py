"""Direct quadrature of the beta function of single and double layers.

For every outer node ``p`` the inner integral over the shape is taken in
local polar coordinates ``(rho, tau)`` centred at ``p``: ``rho`` in [0, 1] is
a radial chart variable and ``tau`` a direction.  Near the diagonal the
integrand is ``rho**gamma * G(rho, tau)`` with ``G`` smooth, where
``gamma = beta + dim - 1`` and ``beta = s - 2`` (double layer) or ``s``
(single layer).  The leading term ``rho**gamma * G(0, tau)`` is integrated
exactly (``1/(gamma + 1)``); only the remainder goes through the graded
Gauss-Legendre rule.  Outer rules are spectral (periodic trapezoid, Gauss
in the polar angle), so the total converges quickly for ``Re s`` at least
one unit inside the convergence half-plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _accel
from .curves import PlaneCurve
from .errors import ConvergenceRegionError, DomainError, NonConvergenceError
from .numerics import as_complex, gauss_legendre, periodic_trapezoid
from .surfaces import ParamSurface, _sphere_basis, surface_nodes

GRADING = 3
CHUNK_PAIRS = 1 << 18


@dataclass(frozen=True)
class BetaSample:
    s: complex
    value: complex
    node_count: int
    error_estimate: float


@dataclass
class _Block:
    """Outer nodes and their polar inner rules."""

    normals: np.ndarray  # (k, d)
    weights: np.ndarray  # (k,)
    chords: np.ndarray  # (k, n_inner, d), inner point minus outer point
    inner_normals: np.ndarray
    inner_weights: np.ndarray  # (k, n_inner)
    dir_speed: np.ndarray  # (k, ndir), |dX/drho| at rho = 0
    dir_weights: np.ndarray  # (k, ndir)
    base_density: np.ndarray  # (k,), measure density / rho**(dim-1) at rho = 0
    radial: np.ndarray
    radial_weights: np.ndarray
    dim: int


def _graded_rule(m: int):
    """Gauss-Legendre in sigma with rho = sigma**GRADING on (0, 1)."""
    g = gauss_legendre(m, 0.0, 1.0)
    rho = g.points**GRADING
    return rho, g.weights * GRADING * g.points ** (GRADING - 1)


def _chunks(total: int, per_row: int) -> Iterator[slice]:
    step = max(1, CHUNK_PAIRS // max(per_row, 1))
    for start in range(0, total, step):
        yield slice(start, min(total, start + step))


def _curve_blocks(curve: PlaneCurve, n: int, m: int) -> Iterator[_Block]:
    outer = periodic_trapezoid(n)
    _, _, normal, speed = curve.frame(outer.points)
    rho, omega = _graded_rule(m)
    steps = np.pi * np.concatenate([rho, -rho])
    for sl in _chunks(n, 2 * m):
        t0 = outer.points[sl, None]
        _, _, inormal, ispeed = curve.frame(t0 + steps)
        k = len(t0)
        yield _Block(
            normal[sl], outer.weights[sl] * speed[sl],
            curve.chord(t0, steps), inormal, np.pi * np.tile(omega, 2) * ispeed,
            np.repeat((np.pi * speed[sl])[:, None], 2, axis=1), np.ones((k, 2)),
            np.pi * speed[sl], rho, omega, 1,
        )


def _ellipsoid_blocks(surface: ParamSurface, n: int, m: int) -> Iterator[_Block]:
    # inner chart: the sphere of directions rotated so the outer node sits at its pole
    nodes = surface_nodes(surface, n)
    ax = surface.axes
    cof = np.array([ax[1] * ax[2], ax[0] * ax[2], ax[0] * ax[1]])
    rot = surface.rotation
    rho, omega = _graded_rule(m)
    ndir = 2 * m
    phi = 2 * np.pi * np.arange(ndir) / ndir
    w_dir = np.full(ndir, 2 * np.pi / ndir)
    th = np.pi * rho
    for sl in _chunks(len(nodes.weights), ndir * m):
        om, et, ep = _sphere_basis(nodes.t1[sl], nodes.t2[sl])
        k = len(om)
        dirs = np.cos(phi)[None, :, None] * et[:, None, :] + np.sin(phi)[None, :, None] * ep[:, None, :]
        step = (
            -2 * np.sin(th / 2)[None, None, :, None] ** 2 * om[:, None, None, :]
            + np.sin(th)[None, None, :, None] * dirs[:, :, None, :]
        ).reshape(k, ndir * m, 3)
        unit = om[:, None, :] + step
        inrm = unit / ax
        inrm = (inrm / np.linalg.norm(inrm, axis=-1, keepdims=True)) @ rot.T
        density = np.linalg.norm(unit * cof, axis=-1)
        radial_w = np.tile(np.pi * omega * np.sin(th), ndir)
        yield _Block(
            nodes.normals[sl], nodes.weights[sl],
            (step * ax) @ rot.T, inrm, np.repeat(w_dir, m)[None, :] * radial_w[None, :] * density,
            np.pi * np.linalg.norm(dirs * ax, axis=-1), np.broadcast_to(w_dir, (k, ndir)),
            np.pi**2 * np.linalg.norm(om * cof, axis=-1), rho, omega, 2,
        )


_SQUARE = np.pi * np.array([[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _square_directions(metric: np.ndarray, per_side: int):
    """Directions to the boundary of the period square and their weights.

    The square around the outer node is cut into four triangles.  Within each,
    directions are spaced uniformly in the angle measured by ``metric`` (the
    first fundamental form at the node), which keeps the leading term of the
    integrand flat in the direction variable.  Returns ``e (k, ndir, 2)``,
    weights ``(k, ndir)`` and ``|e|_metric (k, ndir)``.
    """
    chol = np.linalg.cholesky(metric)  # metric = C C^T, |e|_metric = |C^T e|
    ct = np.swapaxes(chol, -1, -2)
    g = gauss_legendre(per_side, 0.0, 1.0)
    es, ws, speeds = [], [], []
    for corner in range(4):
        a, b = _SQUARE[corner], _SQUARE[(corner + 1) % 4]
        wa, d = ct @ a, ct @ (b - a)
        phi_a = np.arctan2(wa[..., 1], wa[..., 0])
        wb = wa + d
        span = np.mod(np.arctan2(wb[..., 1], wb[..., 0]) - phi_a, 2 * np.pi)
        phi = phi_a[:, None] + span[:, None] * g.points
        u = np.stack([np.cos(phi), np.sin(phi)], -1)
        tau = -_cross2(wa[:, None, :], u) / _cross2(d[:, None, :], u)
        w_tau = wa[:, None, :] + tau[..., None] * d[:, None, :]
        speed = np.linalg.norm(w_tau, axis=-1)
        dtau = speed**2 / _cross2(wa, d)[:, None]
        es.append(a + tau[..., None] * (b - a))
        ws.append(span[:, None] * g.weights * dtau * abs(_cross2(a, b - a)))
        speeds.append(speed)
    return np.concatenate(es, 1), np.concatenate(ws, 1), np.concatenate(speeds, 1)


def _torus_blocks(surface: ParamSurface, n: int, m: int) -> Iterator[_Block]:
    nodes = surface_nodes(surface, n)
    rho, omega = _graded_rule(m)
    ndir = 4 * m
    for sl in _chunks(len(nodes.weights), ndir * m):
        t1, t2 = nodes.t1[sl], nodes.t2[sl]
        d = surface.partials(t1, t2, 1)
        jac = np.stack([d[:, 1, 0, :], d[:, 0, 1, :]], -1)
        e, w_dir, speed = _square_directions(np.swapaxes(jac, 1, 2) @ jac, m)
        k = len(t1)
        h1 = (e[:, :, None, 0] * rho).reshape(k, -1)
        h2 = (e[:, :, None, 1] * rho).reshape(k, -1)
        inrm, area = surface.normal_and_area(t1[:, None] + h1, t2[:, None] + h2)
        base = np.linalg.norm(np.cross(d[:, 1, 0, :], d[:, 0, 1, :]), axis=-1)
        wts = np.repeat(w_dir, m, axis=1) * np.tile(omega * rho, ndir)[None, :] * area
        yield _Block(
            nodes.normals[sl], nodes.weights[sl],
            surface.chord(t1[:, None], t2[:, None], h1, h2), inrm, wts,
            speed, w_dir, base, rho, omega, 2,
        )


def _blocks(shape, nodes: int, inner: int) -> Iterator[_Block]:
    if isinstance(shape, PlaneCurve):
        return _curve_blocks(shape, nodes, inner)
    if isinstance(shape, ParamSurface):
        if shape.ellipsoidal:
            return _ellipsoid_blocks(shape, nodes, inner)
        return _torus_blocks(shape, nodes, inner)
    raise DomainError(f"unsupported shape {type(shape).__name__}")


def _dimension(shape) -> int:
    return 1 if isinstance(shape, PlaneCurve) else 2


def convergence_bound(shape, layer: str) -> float:
    """Abscissa of convergence of the defining double integral.

    Double layer: 1 for curves, 0 for surfaces.  Single layer: ``-dim``.
    """
    dim = _dimension(shape)
    return float(dim % 2) if layer == "double" else -float(dim)


def default_nodes(shape) -> int:
    return 512 if isinstance(shape, PlaneCurve) else 24


def default_inner(shape, nodes: int) -> int:
    if isinstance(shape, PlaneCurve):
        return int(min(128, max(16, nodes // 4)))
    return int(max(4, nodes))


def _raw_beta(shape, s: complex, layer: str, nodes: int, inner: int) -> complex:
    if layer == "double":
        beta_exp, coef = s - 2, -s
    else:
        beta_exp, coef = s, 1.0
    total = 0j
    for blk in _blocks(shape, nodes, inner):
        if layer == "double":
            rows = _accel.double_layer_rows(blk.chords, blk.normals, blk.inner_normals, blk.inner_weights, s)
        else:
            rows = _accel.single_layer_rows(blk.chords, blk.inner_weights, s)
        gam = beta_exp + blk.dim - 1
        moment_gap = 1.0 / (gam + 1) - np.dot(blk.radial_weights, np.exp(gam * np.log(blk.radial)))
        lead = np.sum(np.exp(beta_exp * np.log(blk.dir_speed)) * blk.dir_weights, axis=1)
        rows = rows + coef * blk.base_density * lead * moment_gap
        total += np.dot(blk.weights, rows)
    return complex(total)


def _sample(shape, s, layer: str, nodes, inner) -> BetaSample:
    s = as_complex(s)
    bound = convergence_bound(shape, layer)
    if s.real <= bound:
        raise ConvergenceRegionError(f"{layer}-layer integral needs Re s > {bound:g}, got {s}")
    nodes = default_nodes(shape) if nodes is None else int(nodes)
    inner = default_inner(shape, nodes) if inner is None else int(inner)
    if nodes < 4 or inner < 4:
        raise DomainError("need at least 4 outer and 4 inner nodes")
    value = _raw_beta(shape, s, layer, nodes, inner)
    half = _raw_beta(shape, s, layer, nodes // 2, max(2, inner // 2))
    return BetaSample(s, value, nodes, float(abs(value - half)))


def beta_double_layer(shape, s, nodes: int | None = None, inner: int | None = None) -> BetaSample:
    """Beta function of the uniform double layer, ``Re s > 1`` (curves) or ``> 0`` (surfaces).

    ``nodes`` is the outer node count (``n`` for curves, ``n x 2n`` for
    surfaces); ``inner`` the number of radial inner nodes.
    """
    return _sample(shape, s, "double", nodes, inner)


def beta_single_layer(shape, s, nodes: int | None = None, inner: int | None = None) -> BetaSample:
    """Beta function of the surface measure, ``Re s > -dim``."""
    return _sample(shape, s, "single", nodes, inner)


def residue_extrapolate(
    evaluator: Callable[[complex], complex], pole: float, steps: int = 8, tol: float = 1e-8
) -> complex:
    """Richardson limit of ``(s - pole) * evaluator(s)`` along ``s = pole + 2**-k``.

    Raises ``NonConvergenceError`` if the last two diagonal extrapolants
    differ by more than ``10 * tol`` (relative to ``max(1, |value|)``).
    """
    if steps < 1:
        raise DomainError("need at least one step")
    rows: list[list[complex]] = []
    for k in range(1, steps + 1):
        h = 2.0**-k
        row = [h * complex(evaluator(pole + h))]
        for j, prev in enumerate(rows[-1] if rows else [], start=1):
            row.append(row[j - 1] + (row[j - 1] - prev) / (2**j - 1))
        rows.append(row)
    value = rows[-1][-1]
    if steps >= 2:
        gap = abs(value - rows[-2][-1])
        if gap > 10 * tol * max(1.0, abs(value)):
            raise NonConvergenceError(f"extrapolants differ by {gap:.3g}")
    return value
