"""Closed parametric surfaces in R^3 and their adapted graph jets.

Built-in shapes are spheres, ellipsoids and tori, each optionally moved by a
rigid motion.  All charts are finite sums of products of ``1, cos, sin`` in
the two parameters, so partial derivatives of every order are exact.

Graph convention: at a point with outward normal ``n`` and tangent frame
``(e1, e2)`` (``e1 x e2 = n``) the surface is locally
``X = p + u1 e1 + u2 e2 - f(u1, u2) n`` with

    f = b1 u1^2 + b2 u1 u2 + b3 u2^2
      + c1 u1^3 + c2 u1^2 u2 + c3 u1 u2^2 + c4 u2^3
      + d1 u1^4 + d2 u1^3 u2 + d3 u1^2 u2^2 + d4 u1 u2^3 + d5 u2^4 + ...

so convex surfaces have positive ``b``.  H0 is reported in this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from . import _series as ser
from .errors import DegenerateChartError, DomainError
from .numerics import gauss_legendre, periodic_trapezoid

JET_ORDER = 4
AREA_TOL = 1e-12

# index pairs (i, j) of u1^i u2^j for the b, c, d coefficients
B_IDX = [(2, 0), (1, 1), (0, 2)]
C_IDX = [(3, 0), (2, 1), (1, 2), (0, 3)]
D_IDX = [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]


# --- separable trigonometric charts -------------------------------------------

def _shifted(kind: str, cs, k: int):
    """k-th derivative of 1, cos or sin, given ``cs = (cos t, sin t)``."""
    c, s = cs
    if kind == "one":
        return np.ones_like(c) if k == 0 else None
    cyc = (c, -s, -c, s) if kind == "cos" else (s, c, -s, -c)
    return cyc[k % 4]


def _value_and_step(kind: str, t, h):
    """``g(t + h)`` and ``g(t + h) - g(t)`` for ``g`` in {1, cos, sin}."""
    if kind == "one":
        return None, None
    mid, amp = t + h / 2, 2 * np.sin(h / 2)
    if kind == "cos":
        return np.cos(t + h), -amp * np.sin(mid)
    return np.sin(t + h), amp * np.cos(mid)


def trig_partials(terms, t1, t2, order: int) -> np.ndarray:
    """Partials ``[..., i, j, :] = d^i/dt1^i d^j/dt2^j X`` for ``i + j <= order``.

    ``terms`` is a sequence of ``(vector, kind1, kind2)`` with ``vector`` of
    shape ``(..., 3)``.
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    shape = np.broadcast_shapes(t1.shape, t2.shape, *(np.shape(v)[:-1] for v, _, _ in terms))
    out = np.zeros(shape + (order + 1, order + 1, 3))
    cs1, cs2 = (np.cos(t1), np.sin(t1)), (np.cos(t2), np.sin(t2))
    for vec, k1, k2 in terms:
        vec = np.asarray(vec, dtype=float)
        for i in range(order + 1):
            g = _shifted(k1, cs1, i)
            if g is None:
                continue
            for j in range(order + 1 - i):
                h = _shifted(k2, cs2, j)
                if h is not None:
                    out[..., i, j, :] += (g * h)[..., None] * vec
    return out


@dataclass(frozen=True, eq=False)
class ParamSurface:
    """A built-in closed surface, ``world = scale * rotation @ body + translation``.

    ``kind`` is ``"sphere"`` (params ``(R,)``), ``"ellipsoid"`` (``(a, b, c)``)
    or ``"torus"`` (``(R, r)``, ``R > r``).  Sphere and ellipsoid use the chart
    ``(theta, phi)``; the torus uses ``(t1, t2)`` with ``t1`` the tube angle.
    """

    kind: str
    params: tuple
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        params = tuple(float(x) for x in self.params)
        object.__setattr__(self, "params", params)
        rot = np.asarray(self.rotation, dtype=float)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", np.asarray(self.translation, dtype=float))
        expected = {"sphere": 1, "ellipsoid": 3, "torus": 2}
        if self.kind not in expected:
            raise DomainError(f"unknown surface kind {self.kind!r}")
        if len(params) != expected[self.kind] or min(params) <= 0:
            raise DomainError(f"{self.kind} needs {expected[self.kind]} positive parameters")
        if self.kind == "torus" and not params[0] > params[1]:
            raise DomainError("torus needs R > r")
        if np.abs(rot.T @ rot - np.eye(3)).max() > 1e-12 or np.linalg.det(rot) <= 0:
            raise DomainError("rotation must be a proper orthogonal matrix")

    @property
    def ellipsoidal(self) -> bool:
        return self.kind in ("sphere", "ellipsoid")

    @property
    def axes(self) -> np.ndarray:
        """Semi-axes of a sphere or ellipsoid."""
        if self.kind == "sphere":
            return np.full(3, self.params[0])
        if self.kind == "ellipsoid":
            return np.array(self.params)
        raise DomainError("torus has no semi-axes")

    def sphere_radius(self):
        """Radius if the surface is a round sphere, else None."""
        if self.ellipsoidal and np.ptp(self.axes) == 0:
            return float(self.axes[0])
        return None

    def transformed(self, rotation=np.eye(3), translation=(0.0, 0.0, 0.0), scale: float = 1.0) -> "ParamSurface":
        """Image under ``x -> scale * rotation @ x + translation``."""
        rot = np.asarray(rotation, dtype=float)
        params = tuple(scale * p for p in self.params)
        return ParamSurface(
            self.kind,
            params,
            rot @ self.rotation,
            scale * rot @ self.translation + np.asarray(translation, dtype=float),
        )

    # charts

    def _body_terms(self):
        e = np.eye(3)
        if self.ellipsoidal:
            a, b, c = self.axes
            return [(a * e[0], "sin", "cos"), (b * e[1], "sin", "sin"), (c * e[2], "cos", "one")]
        big, small = self.params
        return [
            (big * e[0], "one", "cos"),
            (small * e[0], "cos", "cos"),
            (big * e[1], "one", "sin"),
            (small * e[1], "cos", "sin"),
            (small * e[2], "sin", "one"),
        ]

    def _to_world(self, partials: np.ndarray) -> np.ndarray:
        out = partials @ self.rotation.T
        out[..., 0, 0, :] += self.translation
        return out

    @property
    def orientation(self) -> int:
        """Sign making ``orientation * X_1 x X_2`` outward."""
        return 1 if self.ellipsoidal else -1

    def partials(self, t1, t2, order: int = 1) -> np.ndarray:
        return self._to_world(trig_partials(self._body_terms(), t1, t2, order))

    def local_partials(self, t1, t2, order: int = JET_ORDER) -> np.ndarray:
        """Partials at the origin of a well-conditioned chart centred on ``(t1, t2)``.

        For sphere/ellipsoid the chart is the equatorial chart rotated so that
        ``(t1, t2)`` sits on its equator; its first coordinate follows the
        ``theta`` direction and the second the ``phi`` direction.
        """
        if not self.ellipsoidal:
            return self.partials(t1, t2, order)
        t1 = np.asarray(t1, dtype=float)
        t2 = np.asarray(t2, dtype=float)
        omega, e_theta, e_phi = _sphere_basis(t1, t2)
        ax = self.axes
        terms = [(ax * omega, "cos", "cos"), (ax * e_theta, "sin", "cos"), (ax * e_phi, "one", "sin")]
        zero = np.zeros(np.broadcast_shapes(t1.shape, t2.shape))
        return self._to_world(trig_partials(terms, zero, zero, order))

    def position(self, t1, t2) -> np.ndarray:
        return self.partials(t1, t2, 0)[..., 0, 0, :]

    def normal_and_area(self, t1, t2):
        """Outward unit normal and area element, closed form for the torus."""
        if self.ellipsoidal:
            _, normal, _, area = surface_frame(self, t1, t2)
            return normal, area
        big, small = self.params
        c1, s1, c2, s2 = np.cos(t1), np.sin(t1), np.cos(t2), np.sin(t2)
        normal = np.stack([c1 * c2, c1 * s2, s1], -1) @ self.rotation.T
        return normal, small * (big + small * c1)

    def chord(self, t1, t2, h1, h2) -> np.ndarray:
        """``X(t1 + h1, t2 + h2) - X(t1, t2)`` without cancellation for small steps."""
        t1, t2, h1, h2 = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (t1, t2, h1, h2)))
        out = np.zeros(t1.shape + (3,))
        steps1 = {k: _value_and_step(k, t1, h1)[1] for k in ("cos", "sin", "one")}
        steps2 = {k: _value_and_step(k, t2, h2) for k in ("cos", "sin", "one")}
        base1 = {"cos": np.cos(t1), "sin": np.sin(t1), "one": None}
        for vec, k1, k2 in self._body_terms():
            # f(t1+h1) g(t2+h2) - f(t1) g(t2) = df g(t2+h2) + f(t1) dg
            g, dg = steps2[k2]
            df, f = steps1[k1], base1[k1]
            term = 0.0
            if df is not None:
                term = term + (df if g is None else df * g)
            if dg is not None:
                term = term + (dg if f is None else f * dg)
            out += np.asarray(term)[..., None] * vec
        return out @ self.rotation.T

    def outward_normal_implicit(self, x) -> np.ndarray:
        """Outward normal from the implicit equation (independent of the chart)."""
        body = (np.asarray(x) - self.translation) @ self.rotation
        if self.ellipsoidal:
            g = body / self.axes**2
        else:
            big, _ = self.params
            rho = np.hypot(body[..., 0], body[..., 1])
            ring = np.stack([body[..., 0] * big / rho, body[..., 1] * big / rho, np.zeros_like(rho)], -1)
            g = body - ring
        g = g @ self.rotation.T
        return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _sphere_basis(theta, phi):
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    omega = np.stack([st * cp, st * sp, ct], -1)
    e_theta = np.stack([ct * cp, ct * sp, -st], -1)
    e_phi = np.stack([-sp, cp, np.zeros_like(sp)], -1)
    return omega, e_theta, e_phi


def sphere(radius: float = 1.0) -> ParamSurface:
    return ParamSurface("sphere", (radius,))


def ellipsoid(a: float, b: float, c: float) -> ParamSurface:
    return ParamSurface("ellipsoid", (a, b, c))


def torus(big: float, small: float) -> ParamSurface:
    return ParamSurface("torus", (big, small))


# --- frames, nodes, jets -------------------------------------------------------

def _frame_from_partials(partials: np.ndarray, orientation: int):
    x1 = partials[..., 1, 0, :]
    x2 = partials[..., 0, 1, :]
    cross = orientation * np.cross(x1, x2)
    area = np.linalg.norm(cross, axis=-1)
    if np.any(area < AREA_TOL):
        raise DegenerateChartError("area element vanishes (chart pole)")
    normal = cross / area[..., None]
    e1 = x1 / np.linalg.norm(x1, axis=-1, keepdims=True)
    e2 = np.cross(normal, e1)
    return e1, e2, normal, area


def surface_frame(surface: ParamSurface, t1, t2):
    """Position, outward unit normal, tangent frame ``(e1, e2)`` and area element."""
    d = surface.partials(t1, t2, 1)
    e1, e2, normal, area = _frame_from_partials(d, surface.orientation)
    return d[..., 0, 0, :], normal, np.stack([e1, e2], -2), area


@dataclass(frozen=True)
class SurfaceNodes:
    t1: np.ndarray
    t2: np.ndarray
    positions: np.ndarray
    normals: np.ndarray
    weights: np.ndarray


def surface_nodes(surface: ParamSurface, n: int) -> SurfaceNodes:
    """Product rule with ``n x 2n`` nodes and area weights.

    Sphere/ellipsoid: Gauss-Legendre in theta (never hits the poles) times
    periodic trapezoid in phi.  Torus: trapezoid in both angles.
    """
    if surface.ellipsoidal:
        r1 = gauss_legendre(n, 0.0, np.pi)
    else:
        r1 = periodic_trapezoid(n)
    r2 = periodic_trapezoid(2 * n)
    t1, t2 = np.meshgrid(r1.points, r2.points, indexing="ij")
    w = np.outer(r1.weights, r2.weights)
    pos, normal, _, area = surface_frame(surface, t1.ravel(), t2.ravel())
    return SurfaceNodes(t1.ravel(), t2.ravel(), pos, normal, w.ravel() * area)


def graph_coefficient_grid(surface: ParamSurface, t1, t2):
    """Graph Taylor coefficients ``F[..., i, j]`` (``i + j <= 4``) and frames."""
    d = surface.local_partials(t1, t2, JET_ORDER)
    e1, e2, normal, _ = _frame_from_partials(d, surface.orientation)
    disp = np.moveaxis(d, -1, -3).copy()  # (..., 3, 5, 5)
    disp = ser.taylor2_from_partials(disp)
    disp[..., 0, 0] = 0.0
    u1 = np.einsum("...k,...kij->...ij", e1, disp)
    u2 = np.einsum("...k,...kij->...ij", e2, disp)
    z = -np.einsum("...k,...kij->...ij", normal, disp)
    x, y = ser.revert2(u1, u2)
    return ser.compose2(z, x, y), d[..., 0, 0, :], e1, e2, normal


@dataclass(frozen=True)
class SurfaceJet:
    """Adapted-frame graph jet (heights measured along ``-normal``)."""

    point: np.ndarray
    tangents: np.ndarray
    normal: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @classmethod
    def from_coefficients(cls, F, point=np.zeros(3), tangents=np.eye(3)[:2], normal=np.eye(3)[2]):
        F = np.asarray(F, dtype=float)
        take = lambda idx: np.array([F[i, j] for i, j in idx])
        return cls(np.asarray(point), np.asarray(tangents), np.asarray(normal), take(B_IDX), take(C_IDX), take(D_IDX))

    def coefficients(self) -> np.ndarray:
        F = np.zeros((JET_ORDER + 1, JET_ORDER + 1))
        for idx, vals in ((B_IDX, self.b), (C_IDX, self.c), (D_IDX, self.d)):
            for (i, j), v in zip(idx, vals):
                F[i, j] = v
        return F

    def graph(self, u1, u2):
        F = self.coefficients()
        return sum(F[i, j] * np.asarray(u1) ** i * np.asarray(u2) ** j for i in range(5) for j in range(5 - i))

    def rotated(self, angle: float) -> "SurfaceJet":
        """Same surface germ described in the tangent frame turned by ``angle``."""
        c, s = np.cos(angle), np.sin(angle)
        g1 = np.zeros((5, 5))
        g2 = np.zeros((5, 5))
        g1[1, 0], g1[0, 1] = c, -s
        g2[1, 0], g2[0, 1] = s, c
        F = ser.compose2(self.coefficients(), g1, g2)
        e1, e2 = self.tangents
        tangents = np.stack([c * e1 + s * e2, -s * e1 + c * e2])
        return SurfaceJet.from_coefficients(F, self.point, tangents, self.normal)

    def flipped(self) -> "SurfaceJet":
        """Opposite normal, ``f -> -f``; the tangent frame is kept as is."""
        return SurfaceJet(self.point, self.tangents, -self.normal, -self.b, -self.c, -self.d)

    def scaled(self, lam: float) -> "SurfaceJet":
        """Jet of ``lam * M`` at the image point."""
        return SurfaceJet(lam * self.point, self.tangents, self.normal, self.b / lam, self.c / lam**2, self.d / lam**3)


def surface_graph_jet(surface: ParamSurface, t1: float, t2: float) -> SurfaceJet:
    """b, c, d coefficients of the graph over the tangent plane at ``(t1, t2)``."""
    F, pos, e1, e2, normal = graph_coefficient_grid(surface, float(t1), float(t2))
    return SurfaceJet.from_coefficients(F, pos, np.stack([e1, e2]), normal)


# --- invariant monomials ---------------------------------------------------------

@dataclass(frozen=True)
class InvariantMonomials:
    """Curvature monomials of weight <= 4 at a point.

    ``H0`` carries the graph sign convention; the other fields are even in the
    normal and are the ten monomials entering the residues.
    """

    H0: float
    H0_sq: float
    H1: float
    H0_4: float
    H1_sq: float
    H0_sq_H1: float
    H2: float
    H0H3: float
    H4: float
    H5: float
    H6: float

    def even_fields(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "H0"}


def monomials_from_coefficients(b, c, d) -> dict:
    """The weight-tabulated polynomials in the graph coefficients (batched).

    ``b, c, d`` have trailing axes 3, 4, 5.
    """
    b1, b2, b3 = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    c1, c2, c3, c4 = np.moveaxis(np.asarray(c, dtype=float), -1, 0)
    d1, d2, d3, d4, d5 = np.moveaxis(np.asarray(d, dtype=float), -1, 0)
    return dict(
        H0=2 * (b1 + b3),
        H0_sq=4 * b3**2 + 8 * b1 * b3 + 4 * b1**2,
        H1=4 * b3**2 + 2 * b2**2 + 4 * b1**2,
        H0_4=16 * b3**4 + 64 * b1 * b3**3 + 96 * b1**2 * b3**2 + 64 * b1**3 * b3 + 16 * b1**4,
        H1_sq=16 * b3**4 + 16 * b2**2 * b3**2 + 32 * b1**2 * b3**2 + 4 * b2**4 + 16 * b1**2 * b2**2 + 16 * b1**4,
        H0_sq_H1=(
            16 * b3**4 + 32 * b1 * b3**3 + 8 * b2**2 * b3**2 + 32 * b1**2 * b3**2
            + 16 * b1 * b2**2 * b3 + 32 * b1**3 * b3 + 8 * b1**2 * b2**2 + 16 * b1**4
        ),
        H2=36 * c4**2 + 12 * c3**2 + 12 * c2**2 + 36 * c1**2,
        H0H3=(
            48 * b3 * d5 + 48 * b1 * d5 + 16 * b3 * d3 + 16 * b1 * d3 - 48 * b3**4
            - 64 * b1 * b3**3 - 32 * b2**2 * b3**2 - 32 * b1**2 * b3**2 - 64 * b1 * b2**2 * b3
            + 48 * d1 * b3 - 64 * b1**3 * b3 - 32 * b1**2 * b2**2 + 48 * b1 * d1 - 48 * b1**4
        ),
        H4=(
            48 * b3 * d5 + 12 * b2 * d4 + 8 * b3 * d3 + 8 * b1 * d3 - 48 * b3**4
            - 48 * b2**2 * b3**2 - 32 * b1**2 * b3**2 - 32 * b1 * b2**2 * b3 + 12 * b2 * d2
            - 8 * b2**4 - 48 * b1**2 * b2**2 + 48 * b1 * d1 - 48 * b1**4
        ),
        H5=(
            48 * b3 * d5 + 12 * b2 * d4 + 8 * b3 * d3 + 8 * b1 * d3 - 48 * b3**4
            - 16 * b1 * b3**3 - 44 * b2**2 * b3**2 - 56 * b1 * b2**2 * b3 - 16 * b1**3 * b3
            + 12 * b2 * d2 - 4 * b2**4 - 44 * b1**2 * b2**2 + 48 * b1 * d1 - 48 * b1**4
        ),
        H6=36 * c4**2 + 24 * c2 * c4 + 4 * c3**2 + 24 * c1 * c3 + 4 * c2**2 + 36 * c1**2,
    )


def invariant_monomials(jet: SurfaceJet) -> InvariantMonomials:
    vals = monomials_from_coefficients(jet.b, jet.c, jet.d)
    return InvariantMonomials(**{k: float(v) for k, v in vals.items()})
