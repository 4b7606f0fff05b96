"""Pointwise integrands of the single- and double-layer beta functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError
from .numerics import as_complex, real_power

COINCIDENT_TOL = 1e-14


@dataclass(frozen=True)
class SurfelPair:
    """Two points of a hypersurface with their unit normals."""

    u: np.ndarray
    nu_u: np.ndarray
    v: np.ndarray
    nu_v: np.ndarray

    def __post_init__(self):
        for name in ("u", "nu_u", "v", "nu_v"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def swapped(self) -> "SurfelPair":
        return SurfelPair(self.v, self.nu_v, self.u, self.nu_u)


def double_layer_kernel(pair: SurfelPair, s) -> complex:
    """Mixed normal derivative of ``|v - u|**s``.

    From ``grad_v |v-u|^s = s |v-u|^(s-2) (v-u)`` differentiated along
    ``nu_u``::

        K_s = -s (s-2) |v-u|^(s-4) <v-u, nu_u> <v-u, nu_v> - s |v-u|^(s-2) <nu_u, nu_v>
    """
    s = as_complex(s)
    diff = pair.v - pair.u
    r = float(np.linalg.norm(diff))
    if r < COINCIDENT_TOL:
        raise CoincidentPointsError("double-layer kernel is singular on the diagonal")
    if s == 0:
        return 0j
    rs = complex(real_power(r, s))
    a = float(diff @ pair.nu_u)
    b = float(diff @ pair.nu_v)
    c = float(pair.nu_u @ pair.nu_v)
    # a * b is formed first so that swapping the two points is exact
    return -s * (s - 2) * rs / r**4 * (a * b) - s * rs / r**2 * c


def single_layer_kernel(u, v, s) -> complex:
    """``|v - u|**s`` (principal real power)."""
    s = as_complex(s)
    r = float(np.linalg.norm(np.asarray(v, dtype=float) - np.asarray(u, dtype=float)))
    if r == 0:
        if s.real > 0:
            return 0j
        raise CoincidentPointsError("single-layer kernel is singular on the diagonal for Re s <= 0")
    return complex(real_power(r, s))
