"""Residues of the double-layer beta function at its leading poles.

Two independent routes per dimension:

* invariant route: integrals of curvature invariants (curves: the signed
  curvature and its arc-length derivatives; surfaces: contractions of the
  second fundamental form and its covariant derivatives);
* jet route: per-point polynomials in the Taylor coefficients of the graph of
  the shape over its tangent space, integrated against the measure.

Both reduce to the same numbers; their agreement is the main consistency
check of the package.  Closed forms (round circles and spheres) and a direct
extrapolation from quadrature can be attached for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .beta import beta_double_layer, residue_extrapolate
from .closed_forms import SphereSpec, sphere_beta_residue
from .curves import PlaneCurve, curvature_jet, curve_measure, graph_coefficients
from .errors import DomainError
from .numerics import QuadratureRule
from .surfaces import B_IDX, C_IDX, D_IDX, ParamSurface, graph_coefficient_grid, monomials_from_coefficients, surface_nodes

CURVE_POLES = (1, -1, -3, -5)
SURFACE_POLES = (0, -2, -4)
DEFAULT_CURVE_NODES = 512
DEFAULT_SURFACE_NODES = 48


@dataclass(frozen=True)
class ResidueReport:
    pole: float
    route_invariant: float
    route_jet: float
    closed_form: float | None = None
    extrapolated: float | None = None
    max_pairwise_gap: float = 0.0

    def values(self) -> list[float]:
        names = ("route_invariant", "route_jet", "closed_form", "extrapolated")
        return [getattr(self, n) for n in names if getattr(self, n) is not None]

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _pairwise_gap(vals) -> float:
    return max((abs(x - y) for i, x in enumerate(vals) for y in vals[i + 1 :]), default=0.0)


# --- curves ---------------------------------------------------------------------

def curve_residue_densities_invariant(kappa: np.ndarray) -> dict:
    """Per-point residue densities from ``kappa = (k0, ..., k4)`` (trailing axis)."""
    k0, k1, k2, k3, k4 = np.moveaxis(kappa[..., :5], -1, 0)
    return {
        1: np.full_like(k0, -2.0),
        -1: 0.75 * k0**2,
        -3: 45 / 64 * k0**4 + 1.25 * k1**2 + 15 / 8 * k0 * k2,
        -5: (
            175 / 512 * k0**6 + 1295 / 288 * k0**2 * k1**2 + 1085 / 576 * k0**3 * k2
            + 175 / 576 * k2**2 + 35 / 72 * k1 * k3 + 35 / 144 * k0 * k4
        ),
    }


def curve_residue_densities_jet(a: np.ndarray) -> dict:
    """Per-point residue densities from graph coefficients ``a[..., k] = a_k`` (k >= 6)."""
    a2, a3, a4, a5, a6 = np.moveaxis(a[..., 2:7], -1, 0)
    return {
        1: np.full_like(a2, -2.0),
        -1: 3 * a2**2,
        -3: (360 * a2 * a4 + 180 * a3**2 - 315 * a2**4) / 4,
        -5: (
            2800 * a2 * a6 + 2800 * a3 * a5 + 1400 * a4**2 - 12600 * a2**3 * a4
            - 18900 * a2**2 * a3**2 + 5775 * a2**6
        ) / 8,
    }


def _curve_nodes(curve: PlaneCurve, rule):
    if rule is None:
        rule = DEFAULT_CURVE_NODES
    return curve_measure(curve, rule)[1]


def curve_residues_invariant(curve: PlaneCurve, rule: QuadratureRule | int | None = None) -> dict:
    """Residues at s = 1, -1, -3, -5 from curvature integrals."""
    nodes = _curve_nodes(curve, rule)
    dens = curve_residue_densities_invariant(curvature_jet(curve, nodes.t, 4))
    return {p: float(nodes.weights @ dens[p]) for p in CURVE_POLES}


def curve_residues_jet(curve: PlaneCurve, rule: QuadratureRule | int | None = None) -> dict:
    """Residues at s = 1, -1, -3, -5 from per-point graph polynomials."""
    nodes = _curve_nodes(curve, rule)
    dens = curve_residue_densities_jet(graph_coefficients(curve, nodes.t))
    return {p: float(nodes.weights @ dens[p]) for p in CURVE_POLES}


# --- surfaces -------------------------------------------------------------------

def surface_residue_densities_invariant(h: dict) -> dict:
    """Per-point densities from the invariant monomials (mapping of arrays)."""
    zero = np.zeros_like(h["H1"])
    return {
        0: zero,
        -2: math.pi / 4 * (h["H0_sq"] + 2 * h["H1"]),
        -4: math.pi / 8 * (
            -15 / 16 * h["H0_4"] + 15 / 4 * h["H1_sq"] + 2 * h["H2"] + 1.5 * h["H0H3"]
            + 4.5 * h["H4"] + 1.5 * h["H5"] + 3 * h["H6"]
        ),
    }


def surface_residue_densities_jet(b, c, d) -> dict:
    """Per-point densities from graph coefficients ``b (.., 3)``, ``c (.., 4)``, ``d (.., 5)``."""
    b1, b2, b3 = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    c1, c2, c3, c4 = np.moveaxis(np.asarray(c, dtype=float), -1, 0)
    d1, d2, d3, d4, d5 = np.moveaxis(np.asarray(d, dtype=float), -1, 0)
    bracket = (
        360 * b3 * d5 + 72 * b1 * d5 + 72 * b2 * d4 + 180 * c4**2
        + 72 * c2 * c4 + 72 * b3 * d3 + 72 * b1 * d3 + 36 * c3**2
        + 72 * c1 * c3 - 315 * b3**4 - 180 * b1 * b3**3 - 270 * b2**2 * b3**2
        - 162 * b1**2 * b3**2 - 324 * b1 * b2**2 * b3 + 72 * d1 * b3
        - 180 * b1**3 * b3 + 72 * b2 * d2 + 36 * c2**2
        - 27 * b2**4  # the quartic in the mixed coefficient; there is no b4
        - 270 * b1**2 * b2**2 + 360 * b1 * d1 + 180 * c1**2 - 315 * b1**4
    )
    return {
        0: np.zeros_like(b1),
        -2: math.pi * (3 * b3**2 + 2 * b1 * b3 + b2**2 + 3 * b1**2),
        -4: math.pi / 8 * bracket,
    }


def _surface_jets(surface: ParamSurface, rule):
    nodes = surface_nodes(surface, DEFAULT_SURFACE_NODES if rule is None else int(rule))
    F = graph_coefficient_grid(surface, nodes.t1, nodes.t2)[0]
    take = lambda idx: np.stack([F[..., i, j] for i, j in idx], -1)
    return nodes.weights, take(B_IDX), take(C_IDX), take(D_IDX)


def surface_residues_invariant(surface: ParamSurface, rule: int | None = None) -> dict:
    """Residues at s = 0, -2, -4 from integrals of invariant monomials."""
    w, b, c, d = _surface_jets(surface, rule)
    dens = surface_residue_densities_invariant(monomials_from_coefficients(b, c, d))
    return {p: float(w @ dens[p]) for p in SURFACE_POLES}


def surface_residues_jet(surface: ParamSurface, rule: int | None = None) -> dict:
    """Residues at s = 0, -2, -4 from per-point graph polynomials."""
    w, b, c, d = _surface_jets(surface, rule)
    dens = surface_residue_densities_jet(b, c, d)
    return {p: float(w @ dens[p]) for p in SURFACE_POLES}


# --- report ---------------------------------------------------------------------

def _closed_form_spec(shape):
    if isinstance(shape, PlaneCurve):
        circ = shape.as_circle()
        return None if circ is None else SphereSpec(2, circ[1])
    radius = shape.sphere_radius()
    return None if radius is None else SphereSpec(3, radius)


def residue_report(
    shape,
    rule=None,
    extrapolate: bool = False,
    extrapolation_nodes: int | None = None,
    steps: int = 6,
    tol: float = 1e-6,
) -> list[ResidueReport]:
    """Residues at every tabulated pole, with all available cross-checks.

    ``extrapolate`` adds a Richardson limit of ``(s - s0) B(s)`` from direct
    quadrature; only the first pole (s0 = 1 for curves, 0 for surfaces) lies
    on the boundary of the quadrature's convergence region, so only it gets
    one.
    """
    if isinstance(shape, PlaneCurve):
        inv, jet, poles = curve_residues_invariant(shape, rule), curve_residues_jet(shape, rule), CURVE_POLES
    elif isinstance(shape, ParamSurface):
        inv, jet, poles = surface_residues_invariant(shape, rule), surface_residues_jet(shape, rule), SURFACE_POLES
    else:
        raise DomainError(f"unsupported shape {type(shape).__name__}")
    spec = _closed_form_spec(shape)
    reports = []
    for pole in poles:
        closed = sphere_beta_residue(spec, pole) if spec is not None else None
        extra = None
        if extrapolate and pole == poles[0]:
            ev = lambda s: beta_double_layer(shape, s, nodes=extrapolation_nodes).value
            extra = float(residue_extrapolate(ev, pole, steps, tol).real)
        vals = [v for v in (inv[pole], jet[pole], closed, extra) if v is not None]
        reports.append(ResidueReport(float(pole), inv[pole], jet[pole], closed, extra, _pairwise_gap(vals)))
    return reports
