"""Beta functions of single and double layers on closed curves and surfaces.

``B(s) = int_M int_M K_s(u, v) dA(v) dA(u)`` is computed by direct quadrature
in its convergence half-plane, exactly for round spheres, and its residues at
the leading poles from local geometry by two independent routes.
"""

from .beta import BetaSample, beta_double_layer, beta_single_layer, residue_extrapolate
from .closed_forms import SphereSpec, sphere_beta, sphere_beta_residue
from .curves import PlaneCurve, circle, curvature_jet, ellipse, graph_jet, random_fourier_curve
from .errors import (
    BrylinskiError,
    CoincidentPointsError,
    ConvergenceRegionError,
    DegenerateChartError,
    DomainError,
    NonConvergenceError,
    PoleError,
    SingularCurveError,
)
from .kernels import SurfelPair, double_layer_kernel, single_layer_kernel
from .residues import (
    ResidueReport,
    curve_residues_invariant,
    curve_residues_jet,
    residue_report,
    surface_residues_invariant,
    surface_residues_jet,
)
from .surfaces import ParamSurface, ellipsoid, invariant_monomials, sphere, surface_graph_jet, torus

__all__ = [name for name in dir() if not name.startswith("_")]
