"""Scalar special functions and one-dimensional quadrature rules.

Complex scalars are plain Python ``complex`` values (numpy ``complex128`` for
arrays).  Powers of non-negative reals are always formed through the real
logarithm, ``r**s = exp(s * ln r)``, so no complex branch cut is involved.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy import special

from .errors import DomainError, PoleError

POLE_TOL = 1e-12


def as_complex(z) -> complex:
    """Coerce ``z`` to a finite Python complex."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite complex value {z!r}")
    return z


def near_nonpositive_integer(z: complex, tol: float = POLE_TOL) -> bool:
    z = complex(z)
    if abs(z.imag) > tol or z.real > 0.5:
        return False
    return abs(z.real - round(z.real)) <= tol


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    The branch is the analytic continuation from the positive real axis with
    a cut along the negative real axis, so that
    ``log_gamma(z + 1) == log_gamma(z) + log(z)`` off the cut.
    """
    z = as_complex(z)
    if near_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    return complex(special.loggamma(z))


def gamma(z) -> complex:
    return cmath.exp(log_gamma(z))


def real_power(r, s):
    """``r**s`` for real ``r >= 0`` and complex ``s`` (principal branch).

    Works elementwise on arrays.  ``0**s`` is 0 for ``Re s > 0`` and an error
    otherwise.
    """
    r = np.asarray(r, dtype=float)
    s = complex(s)
    if np.any(r < 0):
        raise DomainError("real_power needs a non-negative base")
    zero = r == 0
    if np.any(zero) and s.real <= 0:
        raise DomainError("0**s is undefined for Re s <= 0")
    with np.errstate(divide="ignore"):
        out = np.exp(s * np.log(np.where(zero, 1.0, r)))
    out = np.where(zero, 0.0, out)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a fixed one-dimensional rule."""

    kind: Literal["periodic-trapezoid", "gauss-legendre"]
    points: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    @property
    def node_count(self) -> int:
        return len(self.points)

    @property
    def nodes(self) -> list[tuple[float, float]]:
        return list(zip(self.points.tolist(), self.weights.tolist()))


def periodic_trapezoid(n: int) -> QuadratureRule:
    """Equispaced rule on [0, 2*pi) with equal weights 2*pi/n."""
    if n < 1:
        raise DomainError("node count must be positive")
    pts = 2 * np.pi * np.arange(n) / n
    return QuadratureRule("periodic-trapezoid", pts, np.full(n, 2 * np.pi / n), (0.0, 2 * np.pi))


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    if n < 1:
        raise DomainError("node count must be positive")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return QuadratureRule("gauss-legendre", a + half * (x + 1), half * w, (a, b))


def integrate_1d(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> complex:
    """Weighted node sum of a vectorized integrand."""
    vals = np.asarray(f(rule.points))
    return complex(np.dot(rule.weights, vals))


def euler_beta_moment(a: float, b: float) -> float:
    """Closed form of the integral of x (1-x)^a (1-x^2)^(b/2) over [-1, 1].

    Equals ``-2**(a+b+1) * a * Gamma(a+b/2+1) * Gamma(1+b/2) / Gamma(a+b+3)``.
    """
    if not (a > -1 and b > -2):
        raise DomainError(f"moment diverges for a={a}, b={b}")
    if a == 0:
        return 0.0
    lg = log_gamma(a + b / 2 + 1) + log_gamma(1 + b / 2) - log_gamma(a + b + 3)
    return float((-(2.0 ** (a + b + 1)) * a * cmath.exp(lg)).real)
