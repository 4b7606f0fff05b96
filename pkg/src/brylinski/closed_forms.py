"""Exact double-layer beta function of round spheres S^{d-1}(R).

Two normalizations are provided.  ``"printed"`` carries the power of two
``2**(s+d-5)``; ``"corrected"`` carries ``2**(s+d-4)``, which is what one
gets by multiplying the per-point integral
``pi**((d-1)/2) * 2**(s+d-4) R**(s+d-3) s(s-2)(s+d-2) Gamma((s+d-3)/2) / Gamma(s/2+d-1)``
by the measure ``omega_{d-1} R**(d-1)`` of the sphere.  The corrected form is
the default: it agrees with direct quadrature (48 pi on the unit circle at
s = 3), its residue at s = 1 (d = 2) is -2 * length and its residue at s = -2
(d = 3) is 8 pi^2.  The two variants differ by exactly a factor 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

from .beta import residue_extrapolate
from .errors import DomainError, PoleError
from .numerics import as_complex, log_gamma, near_nonpositive_integer, real_power


@dataclass(frozen=True)
class SphereSpec:
    d: int
    R: float = 1.0
    variant: Literal["printed", "corrected"] = "corrected"

    def __post_init__(self):
        if self.d not in (2, 3):
            raise DomainError("ambient dimension must be 2 or 3")
        if not self.R > 0:
            raise DomainError("radius must be positive")
        if self.variant not in ("printed", "corrected"):
            raise DomainError(f"unknown variant {self.variant!r}")


def unit_sphere_area(n: int) -> float:
    """Area of the unit n-sphere in R^{n+1}."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return 2 * math.pi ** ((n + 1) / 2) / math.gamma((n + 1) / 2)


def _gamma_residue(m: int) -> float:
    """Residue of Gamma at -m."""
    return (-1) ** m / math.factorial(m)


def sphere_beta(spec: SphereSpec, s) -> complex:
    """Double-layer beta function of the sphere, anywhere in the s-plane.

    Poles of ``Gamma((s+d-3)/2)`` cancelled by the polynomial prefactor or by
    a pole of ``Gamma(s/2+d-1)`` are removed exactly; remaining poles raise
    ``PoleError``.
    """
    s = as_complex(s)
    d, R = spec.d, spec.R
    shift = d - 4 if spec.variant == "corrected" else d - 5
    pref = (
        math.pi ** ((d - 1) / 2)
        * unit_sphere_area(d - 1)
        * complex(real_power(2.0, s + shift))
        * complex(real_power(R, s + 2 * d - 4))
    )
    poly = s * (s - 2) * (s + d - 2)
    x = (s + d - 3) / 2
    y = s / 2 + d - 1
    x_pole, y_pole = near_nonpositive_integer(x), near_nonpositive_integer(y)
    if not x_pole and not y_pole:
        return pref * poly * cmath.exp(log_gamma(x) - log_gamma(y))
    if y_pole and not x_pole:
        return 0j
    mx = -round(x.real)
    if x_pole and y_pole:
        my = -round(y.real)
        return pref * poly * _gamma_residue(mx) / _gamma_residue(my)
    s0 = 3 - d - 2 * mx
    if s0 * (s0 - 2) * (s0 + d - 2) != 0:
        raise PoleError(f"sphere beta function has a pole at s = {s0}")
    dpoly = (s0 - 2) * (s0 + d - 2) + s0 * (s0 + d - 2) + s0 * (s0 - 2)
    # Gamma(x) ~ res / (x - x0) = 2 res / (s - s0)
    return pref * 2 * dpoly * _gamma_residue(mx) * cmath.exp(-log_gamma(y))


def sphere_beta_residue(spec: SphereSpec, pole: float, steps: int = 10, tol: float = 1e-9) -> float:
    """Residue of :func:`sphere_beta` at ``pole``, by Richardson extrapolation."""
    allowed = [3 - spec.d - 2 * k for k in range(6) if 3 - spec.d - 2 * k >= -5]
    if pole not in allowed:
        raise DomainError(f"pole {pole} not among {allowed}")
    return residue_extrapolate(lambda s: sphere_beta(spec, s), pole, steps, tol).real
