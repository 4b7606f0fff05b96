"""Closed plane curves given by finite Fourier series.

Derivatives of every order are exact.  Conventions for a counterclockwise
curve: the outward normal is the unit tangent rotated 90 degrees clockwise,
the signed curvature is positive, and the graph height ``u2 = f(u1)`` is
measured along the *inward* (left) normal, so a convex curve has ``a2 > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _series as ser
from .errors import DomainError, SingularCurveError
from .numerics import QuadratureRule, periodic_trapezoid

SPEED_TOL = 1e-12
GRAPH_ORDER = 8
MAX_DERIVATIVE = 9


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """``x(t) = sum p_k cos kt + q_k sin kt``, ``y(t) = sum r_k cos kt + w_k sin kt``."""

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    w: np.ndarray
    name: str = "fourier"

    def __post_init__(self):
        arrs = [np.atleast_1d(np.asarray(a, dtype=float)) for a in (self.p, self.q, self.r, self.w)]
        k = max(len(a) for a in arrs)
        arrs = [np.pad(a, (0, k - len(a))) for a in arrs]
        for name, a in zip("pqrw", arrs):
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if not all(np.all(np.isfinite(a)) for a in arrs):
            raise DomainError("Fourier coefficients must be finite")
        t = periodic_trapezoid(1024).points
        speed = np.hypot(*self.derivatives(t, 1)[1])
        if speed.min() < SPEED_TOL:
            raise SingularCurveError(f"curve speed drops to {speed.min():.3g}")

    @property
    def modes(self) -> int:
        return len(self.p) - 1

    def derivatives(self, t, order: int) -> np.ndarray:
        """Array ``(order + 1, 2, *t.shape)``; entry ``[j]`` is the j-th t-derivative."""
        if order > MAX_DERIVATIVE:
            raise DomainError(f"derivatives limited to order {MAX_DERIVATIVE}")
        t = np.asarray(t, dtype=float)
        k = np.arange(self.modes + 1, dtype=float)
        kt = np.multiply.outer(t, k)
        c, s = np.cos(kt), np.sin(kt)
        out = np.empty((order + 1, 2) + t.shape)
        for j in range(order + 1):
            # d^j cos(kt) = k^j cos(kt + j pi/2); the shift cycles (c, s) -> (-s, c)
            m = j % 4
            cj, sj = [(c, s), (-s, c), (-c, -s), (s, -c)][m]
            kj = k**j
            out[j, 0] = cj @ (kj * self.p) + sj @ (kj * self.q)
            out[j, 1] = cj @ (kj * self.r) + sj @ (kj * self.w)
        return out

    def position(self, t) -> np.ndarray:
        return np.moveaxis(self.derivatives(t, 0)[0], 0, -1)

    def chord(self, t, h) -> np.ndarray:
        """``x(t + h) - x(t)`` without cancellation for small ``h``, shape ``(..., 2)``."""
        t, h = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(h, dtype=float))
        k = np.arange(self.modes + 1, dtype=float)
        half = np.multiply.outer(h, k / 2)
        mid = np.multiply.outer(t, k) + half
        amp = 2 * np.sin(half)
        dc, ds = -amp * np.sin(mid), amp * np.cos(mid)
        return np.stack([dc @ self.p + ds @ self.q, dc @ self.r + ds @ self.w], -1)

    def frame(self, t) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Position, unit tangent, outward unit normal and speed at ``t``."""
        d = self.derivatives(t, 1)
        speed = np.hypot(d[1, 0], d[1, 1])
        if np.any(speed < SPEED_TOL):
            raise SingularCurveError("zero speed")
        tangent = d[1] / speed
        normal = np.stack([tangent[1], -tangent[0]])
        mv = lambda a: np.moveaxis(a, 0, -1)
        return mv(d[0]), mv(tangent), mv(normal), speed

    # rigid motions, scaling, orientation

    def transformed(self, rotation=np.eye(2), translation=(0.0, 0.0), scale: float = 1.0) -> "PlaneCurve":
        """Image under ``x -> scale * rotation @ x + translation``."""
        rot = scale * np.asarray(rotation, dtype=float)
        cos_part = rot @ np.stack([self.p, self.r])
        sin_part = rot @ np.stack([self.q, self.w])
        cos_part[:, 0] += np.asarray(translation, dtype=float)
        return PlaneCurve(cos_part[0], sin_part[0], cos_part[1], sin_part[1], self.name)

    def reversed(self) -> "PlaneCurve":
        """Same point set traversed backwards, ``t -> -t``."""
        return PlaneCurve(self.p, -self.q, self.r, -self.w, self.name)

    def as_circle(self, tol: float = 1e-13):
        """``(center, radius)`` if the curve is a uniformly parametrized circle."""
        if self.modes < 1:
            return None
        scale = max(np.abs(np.stack([self.p, self.q, self.r, self.w])).max(), 1.0)
        if self.modes > 1 and np.abs(np.stack([self.p, self.q, self.r, self.w])[:, 2:]).max() > tol * scale:
            return None
        m = np.array([[self.p[1], self.q[1]], [self.r[1], self.w[1]]])
        radius = np.sqrt(abs(np.linalg.det(m)))
        if radius == 0 or np.abs(m.T @ m - radius**2 * np.eye(2)).max() > tol * scale**2:
            return None
        return np.array([self.p[0], self.r[0]]), float(radius)


def circle(radius: float = 1.0, center=(0.0, 0.0)) -> PlaneCurve:
    if radius <= 0:
        raise DomainError("radius must be positive")
    return PlaneCurve([center[0], radius], [0.0, 0.0], [center[1], 0.0], [0.0, radius], "circle")


def ellipse(a: float, b: float) -> PlaneCurve:
    if a <= 0 or b <= 0:
        raise DomainError("semi-axes must be positive")
    return PlaneCurve([0.0, a], [0.0, 0.0], [0.0, 0.0], [0.0, b], "ellipse")


def random_fourier_curve(rng: np.random.Generator, modes: int = 5, amplitude: float = 0.12) -> PlaneCurve:
    """A unit circle with random, decaying higher modes (regular and embedded)."""
    k = np.arange(modes + 1, dtype=float)
    decay = np.where(k > 0, amplitude / np.maximum(k, 1) ** 2, 0.0)
    coef = rng.uniform(-1, 1, size=(4, modes + 1)) * decay
    coef[0, 1] += 1.0
    coef[3, 1] += 1.0
    coef[:, 0] = rng.uniform(-1, 1, 4) * np.array([1, 0, 1, 0])
    return PlaneCurve(*coef, name="random")


# --- jets --------------------------------------------------------------------

@dataclass(frozen=True)
class CurveJet:
    """Graph of the curve over its tangent line at a point.

    ``a[k - 2]`` is the coefficient of ``u1**k`` for ``k = 2..7``; the height
    ``u2`` is measured along ``normal`` (the inward normal).
    """

    point: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    a: np.ndarray

    def graph(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return sum(c * x ** (k + 2) for k, c in enumerate(self.a))


def _check_speed(speed):
    if np.any(np.asarray(speed) < SPEED_TOL):
        raise SingularCurveError("curve speed below tolerance")


def curvature_jet(curve: PlaneCurve, t, n: int = 5) -> np.ndarray:
    """Signed curvature and its arc-length derivatives, shape ``(..., n + 1)``.

    Series arithmetic in ``t`` followed by repeated application of
    ``(1/|gamma'|) d/dt``; no finite differences.
    """
    if not 0 <= n <= 5:
        raise DomainError("curvature jets are available up to order 5")
    t = np.asarray(t, dtype=float)
    d = np.moveaxis(curve.derivatives(t, n + 2), (0, 1), (-1, -2))  # (..., 2, n+3)
    _check_speed(np.hypot(d[..., 0, 1], d[..., 1, 1]))
    vel = ser.taylor_from_derivatives(d[..., 1 : n + 2])
    acc = ser.taylor_from_derivatives(d[..., 2 : n + 3])
    xp, yp = vel[..., 0, :], vel[..., 1, :]
    xpp, ypp = acc[..., 0, :], acc[..., 1, :]
    speed2 = ser.mul1(xp, xp) + ser.mul1(yp, yp)
    kappa = ser.mul1(ser.mul1(xp, ypp) - ser.mul1(yp, xpp), ser.pow1(speed2, -1.5))
    inv_speed = ser.pow1(speed2, -0.5)
    out = [kappa[..., 0]]
    for _ in range(n):
        kappa = ser.mul1(ser.deriv1(kappa), inv_speed[..., : kappa.shape[-1] - 1])
        out.append(kappa[..., 0])
    return np.stack(out, -1)


def graph_coefficients(curve: PlaneCurve, t, order: int = GRAPH_ORDER) -> np.ndarray:
    """Coefficients ``a_0..a_order`` of the graph over the tangent line."""
    t = np.asarray(t, dtype=float)
    d = np.moveaxis(curve.derivatives(t, order), (0, 1), (-1, -2))  # (..., 2, order+1)
    vel = d[..., :, 1]
    speed = np.hypot(vel[..., 0], vel[..., 1])
    _check_speed(speed)
    tan = vel / speed[..., None]
    inward = np.stack([-tan[..., 1], tan[..., 0]], -1)
    disp = ser.taylor_from_derivatives(d)
    disp[..., 0] = 0.0
    u = np.einsum("...i,...ik->...k", tan, disp)
    z = np.einsum("...i,...ik->...k", inward, disp)
    return ser.compose1(z, ser.revert1(u))


def graph_jet(curve: PlaneCurve, t: float) -> CurveJet:
    """Adapted-frame graph jet ``a2..a7`` at parameter ``t``.

    Reversion is carried to order 8 and truncated; ``a8`` stays internal.
    """
    a = graph_coefficients(curve, float(t))
    pos, tan, _, _ = curve.frame(float(t))
    inward = np.array([-tan[1], tan[0]])
    return CurveJet(pos, tan, inward, a[2:8])


def curve_measure(curve: PlaneCurve, rule: QuadratureRule | int):
    """Arc-length weighted nodes.

    Returns ``(length, nodes)`` where ``nodes`` holds parameters, positions,
    outward normals and weights ``|gamma'(t)| * w``.
    """
    if isinstance(rule, int):
        rule = periodic_trapezoid(rule)
    if rule.kind != "periodic-trapezoid":
        raise DomainError("curve measure needs a periodic trapezoid rule")
    pos, _, normal, speed = curve.frame(rule.points)
    weights = speed * rule.weights
    nodes = CurveNodes(rule.points, pos, normal, weights)
    return float(weights.sum()), nodes


@dataclass(frozen=True)
class CurveNodes:
    t: np.ndarray
    positions: np.ndarray
    normals: np.ndarray
    weights: np.ndarray


# --- Fourier file format ------------------------------------------------------

def read_fourier_file(path: str | Path) -> PlaneCurve:
    """Parse lines ``k p_k q_k r_k w_k``; ``#`` starts a comment line."""
    rows = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 5:
            raise DomainError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
        try:
            k = int(parts[0])
            vals = [float(v) for v in parts[1:]]
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: {exc}") from None
        if k < 0 or k in rows:
            raise DomainError(f"{path}:{lineno}: bad or repeated mode {k}")
        rows[k] = vals
    if not rows:
        raise DomainError(f"{path}: no Fourier modes")
    table = np.zeros((4, max(rows) + 1))
    for k, vals in rows.items():
        table[:, k] = vals
    return PlaneCurve(*table, name=Path(path).stem)


def write_fourier_file(curve: PlaneCurve, path: str | Path) -> None:
    lines = ["# k p_k q_k r_k w_k"]
    for k in range(curve.modes + 1):
        vals = (curve.p[k], curve.q[k], curve.r[k], curve.w[k])
        lines.append(f"{k} " + " ".join(f"{v:.17g}" for v in vals))
    Path(path).write_text("\n".join(lines) + "\n")
