import cmath
import math

import numpy as np
import pytest

from calogero.coefficients import c3_table, laurent_table
from calogero.wavefunction import (
    AccuracyWarning,
    ModelParams,
    SingularityError,
    f_descendant_check,
    f_poly,
    pair_variable,
    psi,
    psi2_bessel,
    script_f,
    spherical_zjl,
    vandermonde,
)

RNG = np.random.default_rng(42)


def test_model_params_validation():
    ModelParams(3, 2, 1.0)
    with pytest.raises(ValueError):
        ModelParams(0, 1)
    with pytest.raises(ValueError):
        ModelParams(2, -1)
    with pytest.raises(ValueError):
        ModelParams(2, 1, -0.5)


def test_pair_variable_examples():
    assert pair_variable((1.0, 0.0), (2.0, 0.0), 0, 1) == -2j
    assert pair_variable((0.7, 0.7), (1.0, -3.0), 0, 1) == 0
    x, p = (0.3, -1.2), (2.0, 0.4)
    assert pair_variable(x, p, 0, 1) == pair_variable(p, x, 0, 1)


def test_f_poly_known_forms():
    X = 1.7 - 0.3j
    assert f_poly(0, X, 1) == pytest.approx(1 + 2 / X)
    assert f_poly(2, X, 2) == pytest.approx(24 / X**2)
    for X in (0.5, -3.0, 2.0 + 1.0j):
        assert f_poly(0, X, 0) == pytest.approx(1.0)


def test_f_poly_guards():
    with pytest.raises(SingularityError):
        f_poly(0, 0.0, 1)
    with pytest.raises(ValueError):
        f_poly(3, 1.0, 2)


@pytest.mark.parametrize("ell", range(0, 5))
def test_descendant_route_matches_direct(ell):
    for k in range(ell + 1):
        for X in (0.8, -2.5, 1.1 + 0.9j, -0.4 - 1.3j):
            assert f_descendant_check(k, X, ell) == pytest.approx(
                f_poly(k, X, ell), rel=1e-13
            )


def test_descendant_examples():
    X = 2.2 + 0.5j
    assert f_descendant_check(1, X, 1) == pytest.approx(2 / X)
    assert f_descendant_check(1, X, 2) == pytest.approx(6 / X + 24 / X**2)
    assert f_descendant_check(0, X, 3) == pytest.approx(f_poly(0, X, 3))


def test_spherical_zjl_base_cases():
    z = np.linspace(-12, 12, 101)
    assert np.allclose(spherical_zjl(0, z), np.sin(z), atol=1e-15)
    assert spherical_zjl(3, 0.0) == 0.0
    # small-argument power law at order one
    assert spherical_zjl(1, 1e-4) == pytest.approx(1e-8 / 3, rel=1e-6)


@pytest.mark.parametrize("ell", range(1, 9))
def test_spherical_zjl_recursion(ell):
    # upward recursion as an independent identity check
    for z in (0.7, 2.3, 5.9, 17.2, -3.4):
        lhs = spherical_zjl(ell + 1, z)
        rhs = (2 * ell + 1) / z * spherical_zjl(ell, z) - spherical_zjl(ell - 1, z) * (
            1.0
        )
        assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("ell", range(0, 8))
def test_spherical_zjl_branch_continuity(ell):
    switch = 0.5 + 0.6 * ell
    below, above = switch * (1 - 1e-9), switch * (1 + 1e-9)
    assert spherical_zjl(ell, below) == pytest.approx(
        spherical_zjl(ell, above), rel=1e-10
    )


@pytest.mark.parametrize("ell", range(0, 7))
def test_spherical_zjl_parity(ell):
    for z in (0.3, 1.7, 4.2):
        assert spherical_zjl(ell, -z) == pytest.approx(
            (-1) ** (ell + 1) * spherical_zjl(ell, z), rel=1e-12
        )


def test_psi_plane_wave_reduction():
    x = np.array([0.4, -1.1])
    p = np.array([1.3, 0.2])
    params = ModelParams(2, 0)
    expected = 0.5 * (
        cmath.exp(1j * (p[0] * x[0] + p[1] * x[1]))
        - cmath.exp(1j * (p[0] * x[1] + p[1] * x[0]))
    )
    assert psi(x, p, params) == pytest.approx(expected, rel=1e-14)


def test_psi2_bessel_structure():
    x = np.array([0.9, -0.7])
    p = np.array([1.8, -0.6])
    total_p = p.sum()
    center = x.mean()
    z = (p[0] - p[1]) * (x[0] - x[1]) / 2
    value = psi2_bessel(x, p, 0)
    assert abs(value) == pytest.approx(abs(math.sin(z)), rel=1e-12)
    assert value == pytest.approx(cmath.exp(1j * total_p * center) * 1j * math.sin(z))
    # vanishing at coincidence, quadratically at order one
    assert psi2_bessel((0.5, 0.5), p, 1) == 0
    small = psi2_bessel((0.5 + 1e-4, 0.5), p, 1)
    assert abs(small) < 1e-6


@pytest.mark.parametrize("ell", [0, 1, 3])
def test_psi_matches_bessel_form(ell):
    params = ModelParams(2, ell)
    for _ in range(10):
        x = np.array([-1.2, 1.4]) + RNG.normal(0, 0.2, 2)
        p = np.array([1.9, -1.1]) + RNG.normal(0, 0.2, 2)
        assert psi(x, p, params) == pytest.approx(psi2_bessel(x, p, ell), rel=1e-11)


def test_permutation_and_momentum_covariance():
    params = ModelParams(3, 2)
    x = np.array([-1.6, 0.2, 1.9])
    p = np.array([2.1, -0.3, -1.8])
    base = psi(x, p, params)
    swap = [1, 0, 2]  # odd permutation
    sign = (-1) ** (params.ell + 1)
    assert psi(x[swap], p, params) == pytest.approx(sign * base, rel=1e-12)
    assert psi(x, p[swap], params) == pytest.approx(sign * base, rel=1e-12)


def test_translation_phase():
    params = ModelParams(3, 1)
    x = np.array([-1.4, 0.3, 1.7])
    p = np.array([1.8, -0.4, -1.2])
    a = 0.83
    shifted = psi(x + a, p, params)
    assert shifted == pytest.approx(
        cmath.exp(1j * a * p.sum()) * psi(x, p, params), rel=1e-12
    )


def test_scaling_relation():
    params = ModelParams(3, 2)
    x = np.array([-1.5, 0.4, 1.8])
    p = np.array([2.0, -0.5, -1.6])
    for s in (0.5, 2.0, 3.7):
        assert psi(s * x, p, params) == pytest.approx(psi(x, s * p, params), rel=1e-11)


def test_vandermonde_examples():
    assert vandermonde((2.0, 1.0)) == 1.0
    assert vandermonde((3.0, 2.0, 1.0)) == 2.0
    assert vandermonde((1.5, 0.2, 1.5)) == 0.0


def test_script_f_two_body_reduction():
    x = np.array([0.8, -0.9])
    p = np.array([1.1, -1.3])
    table = laurent_table(2, 3)
    X = pair_variable(x, p, 0, 1)
    assert script_f(x, p, table) == pytest.approx(f_poly(0, X, 3), rel=1e-13)


def test_script_f_representation_agreement():
    x = np.array([-1.7, 0.1, 1.6])
    p = np.array([1.9, -0.2, -2.1])
    for ell in (1, 2, 3):
        a = script_f(x, p, c3_table(ell))
        b = script_f(x, p, laurent_table(3, ell))
        assert a == pytest.approx(b, rel=1e-12)


def test_script_f_trivial_coupling():
    x = np.array([0.3, -0.8, 1.1])
    p = np.array([1.0, 2.0, -0.7])
    assert script_f(x, p, c3_table(0)) == pytest.approx(1.0)


def test_near_coincidence_warns_but_returns():
    params = ModelParams(2, 1)
    x = np.array([0.5, 0.5 + 1e-10])
    p = np.array([1.0, -1.0])
    with pytest.warns(AccuracyWarning):
        value = psi(x, p, params)
    assert np.isfinite(value.real) and np.isfinite(value.imag)


def test_exact_coincidence_raises():
    params = ModelParams(2, 1)
    with pytest.raises(SingularityError):
        psi(np.array([0.5, 0.5]), np.array([1.0, -1.0]), params)


def test_psi_batched_matches_scalar():
    params = ModelParams(2, 1)
    xs = RNG.normal(0, 1, (5, 2)) + np.array([0.0, 2.0])
    ps = RNG.normal(0, 1, (5, 2)) + np.array([2.0, 0.0])
    batch = psi(xs, ps, params)
    for i in range(5):
        assert batch[i] == pytest.approx(psi(xs[i], ps[i], params), rel=1e-14)
