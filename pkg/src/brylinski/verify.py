"""Self-check harness behind ``brylinski verify``.

Each check compares one computed number against an expected one.  Relative
checks scale the tolerance by ``max(1, |expected|)`` so that residues which
happen to vanish are compared absolutely; checks against zero use a
pre-normalized ``actual`` (for instance ``B(2) / length**2``) and an absolute
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from .beta import beta_double_layer, beta_single_layer, residue_extrapolate
from .closed_forms import SphereSpec, sphere_beta
from .curves import circle, curvature_jet, curve_measure, ellipse, graph_coefficients, random_fourier_curve
from .residues import residue_report
from .surfaces import ellipsoid, sphere, surface_graph_jet, surface_nodes, torus

PI = math.pi
CIRCLE_RESIDUES = {1: -4 * PI, -1: 1.5 * PI, -3: 45 * PI / 32, -5: 175 * PI / 256}


@dataclass
class Check:
    name: str
    expected: float
    actual: float
    tolerance: float
    relative: bool = True
    passed: bool = field(init=False)

    def __post_init__(self):
        self.expected, self.actual = float(self.expected), float(self.actual)
        scale = max(1.0, abs(self.expected)) if self.relative else 1.0
        self.passed = bool(abs(self.actual - self.expected) <= self.tolerance * scale)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"checks": [c.as_dict() for c in self.checks], "pass": self.passed}


def kappa_from_graph(a: np.ndarray) -> np.ndarray:
    """Curvature jet ``k0..k5`` as polynomials in graph coefficients ``a[..., k] = a_k``."""
    a2, a3, a4, a5, a6, a7 = np.moveaxis(a[..., 2:8], -1, 0)
    k2 = 24 * a4 - 24 * a2**3
    k4 = 720 * a6 - 16 * a2**2 * k2 - 2880 * a2**2 * a4 - 3456 * a2 * a3**2 + 1440 * a2**5
    k5 = (
        5040 * a7 - 24 * a2**2 * (120 * a5 - 432 * a2**2 * a3) - 16 * a2**2 * (120 * a5 - 456 * a2**2 * a3)
        - 21600 * a2**2 * a5 - 180 * a2 * a3 * k2 - 52992 * a2 * a3 * a4 - 10368 * a3**3 + 65664 * a2**4 * a3
    )
    return np.stack([2 * a2, 6 * a3, k2, 120 * a5 - 456 * a2**2 * a3, k4, k5], -1)


def _curve_checks(full: bool) -> list[Check]:
    out = []
    unit = circle(1.0)
    quad = beta_double_layer(unit, 3, nodes=2048).value.real
    out.append(Check("circle-s3-quadrature-vs-closed-form", sphere_beta(SphereSpec(2), 3).real, quad, 1e-6))

    for rep in residue_report(unit):
        worst = max(rep.values(), key=lambda v: abs(v - CIRCLE_RESIDUES[rep.pole]))
        out.append(Check(f"circle-residue-pole{rep.pole:+g}", CIRCLE_RESIDUES[rep.pole], worst, 1e-8, relative=False))

    curves = [("ellipse", ellipse(2, 1))]
    rng = np.random.default_rng(20240601)
    curves += [(f"fourier{i}", random_fourier_curve(rng)) for i in range(10 if full else 2)]
    for name, c in curves:
        for rep in residue_report(c):
            out.append(Check(f"{name}-route-agreement-pole{rep.pole:+g}", rep.route_invariant, rep.route_jet, 1e-8))

    t = np.random.default_rng(7).uniform(0, 2 * np.pi, 20)
    rng = np.random.default_rng(11)
    worst = 0.0
    for ti in t:
        c = random_fourier_curve(rng)
        k = curvature_jet(c, ti, 5)
        kp = kappa_from_graph(graph_coefficients(c, ti))
        worst = max(worst, float(np.max(np.abs(k - kp) / (1 + np.abs(k)))))
    out.append(Check("kappa-graph-relations", 0.0, worst, 1e-9, relative=False))

    for name, c in (("circle", unit), ("ellipse", ellipse(2, 1))):
        length = curve_measure(c, 512)[0]
        b2 = beta_double_layer(c, 2).value
        out.append(Check(f"{name}-divergence-identity", 0.0, abs(b2) / length**2, 1e-8, relative=False))
    out.append(Check("circle-single-s0", (2 * PI) ** 2, beta_single_layer(unit, 0).value.real, 1e-10))
    out.append(Check("circle-single-s1", 16 * PI, beta_single_layer(unit, 1).value.real, 1e-7))

    closed = residue_extrapolate(lambda s: sphere_beta(SphereSpec(2), s), 1.0, 8, 1e-6).real
    out.append(Check("circle-extrapolated-closed-form-pole+1", -4 * PI, closed, 1e-2))
    if full:
        direct = residue_extrapolate(
            lambda s: beta_double_layer(unit, s, nodes=4096).value, 1.0, 6, 1e-3
        ).real
        out.append(Check("circle-extrapolated-quadrature-pole+1", -4 * PI, direct, 5e-2))

    e = ellipse(2, 1)
    lam = 2.0
    rot = Rotation.from_rotvec([0, 0, 0.7]).as_matrix()[:2, :2]
    base = beta_double_layer(e, 3).value
    scaled = beta_double_layer(e.transformed(scale=lam), 3).value
    moved = beta_double_layer(e.transformed(rot, (0.3, -1.2)), 3).value
    out.append(Check("ellipse-scaling-law", lam**3 * base.real, scaled.real, 1e-8))
    out.append(Check("ellipse-rigid-motion", base.real, moved.real, 1e-8))
    return out


def _surface_checks(full: bool) -> list[Check]:
    out = []
    for R in (1.0, 2.0):
        for rep in residue_report(sphere(R)):
            expected = 8 * PI**2 if rep.pole == -2 else 0.0
            worst = max(rep.values(), key=lambda v: abs(v - expected))
            out.append(Check(f"sphere{R:g}-residue-pole{rep.pole:+g}", expected, worst, 1e-9, relative=False))

    R = 2.0
    jet = surface_graph_jet(sphere(R), 1.1, 0.4)
    want = {"b1": 1 / (2 * R), "b3": 1 / (2 * R), "d1": 1 / (8 * R**3), "d3": 1 / (4 * R**3), "d5": 1 / (8 * R**3)}
    got = {"b1": jet.b[0], "b3": jet.b[2], "d1": jet.d[0], "d3": jet.d[2], "d5": jet.d[4]}
    for k in want:
        out.append(Check(f"sphere-jet-{k}", want[k], got[k], 1e-10, relative=False))

    unit = sphere(1.0)
    area = 4 * PI
    out.append(Check("sphere-divergence-identity", 0.0, abs(beta_double_layer(unit, 2).value) / area**2, 1e-8, relative=False))
    out.append(Check("sphere-single-s0", area**2, beta_single_layer(unit, 0, nodes=16).value.real, 1e-10))
    out.append(Check("sphere-single-s1", 64 * PI**2 / 3, beta_single_layer(unit, 1, nodes=16).value.real, 1e-7))
    out.append(Check("sphere-s3-quadrature-vs-closed-form", sphere_beta(SphereSpec(3), 3).real,
                     beta_double_layer(unit, 3, nodes=16).value.real, 1e-6))

    if full:
        for name, surf in (("torus", torus(2, 1)), ("ellipsoid", ellipsoid(1.5, 1, 0.8))):
            for rep in residue_report(surf):
                out.append(Check(f"{name}-route-agreement-pole{rep.pole:+g}", rep.route_invariant, rep.route_jet, 1e-6))
        tor = torus(2, 1)
        tor_area = float(surface_nodes(tor, 16).weights.sum())
        out.append(Check("torus-divergence-identity", 0.0, abs(beta_double_layer(tor, 2).value) / tor_area**2, 1e-8, relative=False))
        ell = ellipsoid(1.5, 1, 0.8)
        rot = Rotation.from_rotvec([0.3, -0.5, 0.9]).as_matrix()
        base = beta_double_layer(ell, 3, nodes=16).value.real
        out.append(Check("ellipsoid-scaling-law", 0.5**5 * base,
                         beta_double_layer(ell.transformed(scale=0.5), 3, nodes=16).value.real, 1e-8))
        out.append(Check("ellipsoid-rigid-motion", base,
                         beta_double_layer(ell.transformed(rot, (1.0, 2.0, -0.5)), 3, nodes=16).value.real, 1e-8))
    return out


def run_verification(level: str = "fast") -> VerifyReport:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    return VerifyReport(_curve_checks(full) + _surface_checks(full))
