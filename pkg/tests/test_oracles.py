"""Independent re-derivations of the tabulated polynomials.

Everything here is exact (Fraction or sympy) and compared against the float
polynomials the package evaluates.
"""

import random
from fractions import Fraction as Fr

import numpy as np
import pytest
import sympy as sp

from _exact import (
    curve_residues_exact,
    invariants_by_covariant_derivatives,
    surface_residues_exact,
)
from brylinski.residues import (
    curve_residue_densities_invariant,
    curve_residue_densities_jet,
    surface_residue_densities_invariant,
    surface_residue_densities_jet,
)
from brylinski.surfaces import monomials_from_coefficients
from brylinski.verify import kappa_from_graph


def _rational(rng):
    return Fr(rng.randint(-9, 9), rng.randint(1, 7))


@pytest.fixture
def rng():
    return random.Random(1729)


def test_curve_jet_polynomials_match_kernel_expansion(rng):
    for _ in range(4):
        a = {k: _rational(rng) for k in range(2, 10)}
        exact = curve_residues_exact(a)
        arr = np.array([0.0, 0.0] + [float(a[k]) for k in range(2, 10)])
        dens = curve_residue_densities_jet(arr)
        for pole in (-1, -3, -5):
            assert float(dens[pole]) == pytest.approx(float(exact[pole]), rel=1e-12, abs=1e-9)


def test_surface_jet_polynomials_match_kernel_expansion(rng):
    for _ in range(4):
        b = [_rational(rng) for _ in range(3)]
        c = [_rational(rng) for _ in range(4)]
        d = [_rational(rng) for _ in range(5)]
        exact = surface_residues_exact(b, c, d)
        dens = surface_residue_densities_jet(*(np.array([float(x) for x in v]) for v in (b, c, d)))
        for pole in (-2, -4):
            assert float(dens[pole]) == pytest.approx(np.pi * float(exact[pole]), rel=1e-12, abs=1e-9)


def test_mixed_quartic_term_is_b2_to_the_fourth(rng):
    # only the b2**4 reading of the quartic term agrees with the expansion
    b = [Fr(1, 3), Fr(2, 1), Fr(-1, 2)]
    c = [Fr(0)] * 4
    d = [Fr(0)] * 5
    exact = surface_residues_exact(b, c, d)[-4]
    dens = surface_residue_densities_jet(np.array([float(x) for x in b]), np.zeros(4), np.zeros(5))
    assert float(dens[-4]) == pytest.approx(np.pi * float(exact), rel=1e-12)


def test_invariant_table_matches_covariant_derivatives(rng):
    for _ in range(5):
        b = [_rational(rng) for _ in range(3)]
        c = [_rational(rng) for _ in range(4)]
        d = [_rational(rng) for _ in range(5)]
        direct = invariants_by_covariant_derivatives(b, c, d)
        table = monomials_from_coefficients(*(np.array([float(x) for x in v]) for v in (b, c, d)))
        for name, value in table.items():
            assert float(value) == pytest.approx(float(direct[name]), rel=1e-12, abs=1e-9), name


def test_two_routes_agree_pointwise_for_curves():
    gen = np.random.default_rng(3)
    a = np.zeros((50, 9))
    a[:, 2:] = gen.normal(size=(50, 7))
    inv = curve_residue_densities_invariant(kappa_from_graph(a))
    jet = curve_residue_densities_jet(a)
    for pole in (1, -1, -3, -5):
        np.testing.assert_allclose(inv[pole], jet[pole], rtol=1e-11, atol=1e-9)


def test_two_routes_agree_pointwise_for_surfaces():
    gen = np.random.default_rng(4)
    b, c, d = gen.normal(size=(40, 3)), gen.normal(size=(40, 4)), gen.normal(size=(40, 5))
    inv = surface_residue_densities_invariant(monomials_from_coefficients(b, c, d))
    jet = surface_residue_densities_jet(b, c, d)
    for pole in (0, -2, -4):
        np.testing.assert_allclose(inv[pole], jet[pole], rtol=1e-11, atol=1e-9)


def _curvature_jet_symbolic(values):
    """kappa_0..kappa_5 at the origin of the graph y = sum a_k x^k, by sympy."""
    x = sp.symbols("x")
    f = sum(sp.Rational(values[k]) * x**k for k in range(2, 9))
    speed = sp.sqrt(1 + sp.diff(f, x) ** 2)
    kappa = sp.diff(f, x, 2) / speed**3
    out = []
    for _ in range(6):
        out.append(kappa.subs(x, 0))
        kappa = sp.diff(kappa, x) / speed
    return [sp.Rational(v) for v in out]


def test_kappa_relations_against_symbolic_differentiation(rng):
    values = {k: _rational(rng) for k in range(2, 9)}
    exact = _curvature_jet_symbolic(values)
    a = np.array([0.0, 0.0] + [float(values[k]) for k in range(2, 9)])
    np.testing.assert_allclose(kappa_from_graph(a), [float(v) for v in exact], rtol=1e-12)


def test_kappa5_alternative_coefficient_is_wrong(rng):
    # reading 432 as 456 in the first bracket adds 576 a2^4 a3, which breaks the identity
    values = {k: _rational(rng) for k in range(2, 9)}
    values[2], values[3] = Fr(1, 2), Fr(1, 3)
    exact = float(_curvature_jet_symbolic(values)[5])
    k5 = kappa_from_graph(np.array([0.0, 0.0] + [float(values[k]) for k in range(2, 9)]))[5]
    assert k5 == pytest.approx(exact, rel=1e-12)
    assert k5 + 576 * 0.5**4 / 3 != pytest.approx(exact, rel=1e-6)


def test_double_layer_kernel_matches_symbolic_mixed_derivative():
    from brylinski.kernels import SurfelPair, double_layer_kernel

    s = sp.symbols("s")
    u = sp.Matrix(sp.symbols("u0:3"))
    v = sp.Matrix(sp.symbols("v0:3"))
    nu = sp.Matrix(sp.symbols("n0:3"))
    nv = sp.Matrix(sp.symbols("m0:3"))
    N = ((v - u).T * (v - u))[0] ** (s / 2)
    grad_v = sp.Matrix([sp.diff(N, vi) for vi in v])
    directional = (grad_v.T * nv)[0]
    mixed = sum(sp.diff(directional, ui) * ni for ui, ni in zip(u, nu))
    gen = np.random.default_rng(5)
    for sval in (3.0, 4.5, 1.7):
        pu, pv = gen.normal(size=3), gen.normal(size=3)
        qu, qv = gen.normal(size=3), gen.normal(size=3)
        qu, qv = qu / np.linalg.norm(qu), qv / np.linalg.norm(qv)
        subs = {s: sval}
        subs.update(dict(zip(u, pu)))
        subs.update(dict(zip(v, pv)))
        subs.update(dict(zip(nu, qu)))
        subs.update(dict(zip(nv, qv)))
        # the kernel differentiates along nu_u at the point u, hence grad_u = -grad_{v-u}
        expected = float(mixed.subs(subs))
        got = double_layer_kernel(SurfelPair(pu, qu, pv, qv), sval)
        assert got.real == pytest.approx(expected, rel=1e-10)
