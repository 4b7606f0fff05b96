import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from brylinski.beta import beta_double_layer, beta_single_layer, convergence_bound, residue_extrapolate
from brylinski.closed_forms import SphereSpec, sphere_beta
from brylinski.curves import circle, curve_measure, ellipse, random_fourier_curve
from brylinski.errors import ConvergenceRegionError, DomainError, NonConvergenceError
from brylinski.surfaces import ellipsoid, sphere, surface_nodes, torus

PI = math.pi
ELL = ellipsoid(1.5, 1.0, 0.8)


def _rot2(angle):
    return Rotation.from_rotvec([0, 0, angle]).as_matrix()[:2, :2]


def test_unit_circle_at_three():
    sample = beta_double_layer(circle(1), 3, nodes=2048)
    assert sample.value.real == pytest.approx(48 * PI, rel=1e-12)
    assert sample.node_count == 2048
    assert sample.error_estimate >= 0


@pytest.mark.parametrize("R", [1.0, 2.0])
@pytest.mark.parametrize("s", [1.5, 2.5 + 1j, 4.0])
def test_sphere_against_closed_form(R, s):
    got = beta_double_layer(sphere(R), s, nodes=24).value
    want = sphere_beta(SphereSpec(3, R), s)
    assert abs(got - want) <= 1e-10 * abs(want)


@pytest.mark.parametrize("s", [1.2, 2.5, 3.0 - 2j])
def test_circle_against_closed_form(s):
    got = beta_double_layer(circle(1.5), s).value
    want = sphere_beta(SphereSpec(2, 1.5), s)
    assert abs(got - want) <= 1e-10 * abs(want)


@pytest.mark.parametrize("shape, measure", [
    (circle(1), 2 * PI), (ellipse(2, 1), 9.688448220547675), (sphere(1), 4 * PI), (torus(2, 1), 8 * PI**2),
])
def test_double_layer_vanishes_at_two(shape, measure):
    assert abs(beta_double_layer(shape, 2).value) / measure**2 < 1e-8


@pytest.mark.parametrize("shape, measure", [
    (circle(1), 2 * PI), (ellipse(2, 1), 9.688448220547675), (sphere(1), 4 * PI), (ELL, None), (torus(2, 1), 8 * PI**2),
])
def test_single_layer_at_zero_is_measure_squared(shape, measure):
    if measure is None:
        measure = surface_nodes(shape, 64).weights.sum()
    assert beta_single_layer(shape, 0).value.real == pytest.approx(measure**2, rel=1e-10)


def test_single_layer_at_one():
    assert beta_single_layer(circle(1), 1).value.real == pytest.approx(16 * PI, rel=1e-7)
    assert beta_single_layer(sphere(1), 1, nodes=16).value.real == pytest.approx(64 * PI**2 / 3, rel=1e-7)


def test_single_layer_below_zero_converges():
    # the circle integral 2 pi int |2 sin(t/2)|^s dt has a closed form for -1 < s
    s = -0.5
    exact = 2 * PI * 2 * PI * math.gamma(1 + s) / math.gamma(1 + s / 2) ** 2
    assert beta_single_layer(circle(1), s).value.real == pytest.approx(exact, rel=1e-8)


@pytest.mark.parametrize("shape, layer, s", [
    (circle(1), "double", 1.0), (circle(1), "double", 0), (sphere(1), "double", 0), (sphere(1), "double", -0.5),
    (circle(1), "single", -1.0), (sphere(1), "single", -2.0),
])
def test_convergence_region(shape, layer, s):
    fn = beta_double_layer if layer == "double" else beta_single_layer
    with pytest.raises(ConvergenceRegionError):
        fn(shape, s)
    assert s <= convergence_bound(shape, layer)


def test_too_few_nodes():
    with pytest.raises(DomainError):
        beta_double_layer(circle(1), 3, nodes=2)


@settings(max_examples=10)
@given(st.floats(1.3, 5), st.floats(-3, 3))
def test_conjugate_symmetry(x, y):
    c = ellipse(2, 1)
    a = beta_double_layer(c, complex(x, y), nodes=128).value
    b = beta_double_layer(c, complex(x, -y), nodes=128).value
    assert abs(a - b.conjugate()) <= 1e-12 * abs(a)


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_curve_scaling_law(lam):
    c = random_fourier_curve(np.random.default_rng(12))
    for s in (1.7, 3.2 + 0.5j):
        base = beta_double_layer(c, s).value
        scaled = beta_double_layer(c.transformed(scale=lam), s).value
        assert abs(scaled - lam**s * base) <= 1e-8 * abs(scaled)
        base = beta_single_layer(c, s).value
        scaled = beta_single_layer(c.transformed(scale=lam), s).value
        assert abs(scaled - lam ** (s + 2) * base) <= 1e-8 * abs(scaled)


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_surface_scaling_law(lam):
    base = beta_double_layer(ELL, 2.6, nodes=12).value
    scaled = beta_double_layer(ELL.transformed(scale=lam), 2.6, nodes=12).value
    assert scaled == pytest.approx(lam ** (2.6 + 2) * base, rel=1e-8)


def test_rigid_motion_invariance():
    c = random_fourier_curve(np.random.default_rng(13))
    base = beta_double_layer(c, 2.3).value
    moved = beta_double_layer(c.transformed(_rot2(1.1), (4.0, -2.0)), 2.3).value
    assert moved == pytest.approx(base, rel=1e-9)
    rot = Rotation.from_rotvec([0.7, -0.2, 1.3]).as_matrix()
    for surf in (ELL, torus(2, 1)):
        base = beta_double_layer(surf, 2.3, nodes=12).value
        moved = beta_double_layer(surf.transformed(rot, (1, 2, 3)), 2.3, nodes=12).value
        assert moved == pytest.approx(base, rel=1e-9)


def test_error_estimate_decreases_with_nodes():
    samples = [beta_double_layer(ellipse(2, 1), 2.5, nodes=n) for n in (64, 128, 256, 512)]
    est = [x.error_estimate for x in samples]
    floor = 1e-12 * abs(samples[-1].value)  # differences of round-off size
    assert all(b <= max(a, floor) for a, b in zip(est, est[1:]))
    for surf in (ELL, torus(2, 1)):
        est = [beta_double_layer(surf, 1.5, nodes=n).error_estimate for n in (8, 12, 16)]
        assert all(b <= a for a, b in zip(est, est[1:]))


def test_torus_converges():
    # the halving estimate is conservative: it compares against n // 2
    mid = beta_double_layer(torus(2, 1), 3, nodes=24)
    fine = beta_double_layer(torus(2, 1), 3, nodes=32)
    assert abs(fine.value - mid.value) <= 1e-9 * abs(fine.value)
    assert abs(fine.value - mid.value) <= mid.error_estimate


def test_extrapolate_closed_forms():
    circle_res = residue_extrapolate(lambda s: sphere_beta(SphereSpec(2), s), 1.0, 8, 1e-6)
    assert circle_res.real == pytest.approx(-4 * PI, rel=1e-8)
    sphere_res = residue_extrapolate(lambda s: sphere_beta(SphereSpec(3), s), -2.0, 8, 1e-6)
    assert sphere_res.real == pytest.approx(8 * PI**2, rel=1e-8)
    zero = residue_extrapolate(lambda s: sphere_beta(SphereSpec(3), s), 0.0, 8, 1e-6)
    assert abs(zero) < 1e-8


def test_extrapolate_simple_function():
    assert residue_extrapolate(lambda s: np.exp(s) / (s - 1), 1.0, 10) == pytest.approx(math.e, rel=1e-12)


def test_extrapolate_flags_double_poles():
    with pytest.raises(NonConvergenceError):
        residue_extrapolate(lambda s: 1 / (s - 1) ** 2, 1.0, 6)
    with pytest.raises(DomainError):
        residue_extrapolate(lambda s: s, 0.0, 0)


def test_curve_measure_matches_single_layer():
    c = random_fourier_curve(np.random.default_rng(14))
    length = curve_measure(c, 512)[0]
    assert beta_single_layer(c, 0).value.real == pytest.approx(length**2, rel=1e-10)
