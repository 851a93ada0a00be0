import cmath

import numpy as np
import pytest

from dmkdv import (
    DomainError,
    LatticeState,
    ReflectionTooLargeError,
    UnitCirclePoint,
    conserved_c_inf,
    jost_minus,
    jost_pair,
    jost_plus,
    reduced_potential,
    reflection_evaluator,
    reflection_grid,
    scattering_coefficients,
    staggered,
)


def single_site(c, site=0):
    half = abs(site) + 2
    q = np.zeros(2 * half + 1)
    q[half + site] = c
    return LatticeState(n_min=-half, values=q)


def circle_points(count):
    return [UnitCirclePoint.from_theta(2 * np.pi * k / count)
            for k in range(count)]


def brute_step(qn, n, z):
    # z^{-sigma3} Q~_n at t = 0, multiplied out entry by entry
    zinv = np.array([[1 / z, 0], [0, z]], dtype=complex)
    qt = np.array([[0, qn * z ** (-2 * n)], [qn * z ** (2 * n), 0]],
                  dtype=complex)
    return zinv @ qt


def test_reduced_potential_examples():
    zero = single_site(0.0)
    z = UnitCirclePoint.from_theta(0.37)
    assert np.all(reduced_potential(zero, 0, z) == 0.0)

    state = single_site(0.5)
    got = reduced_potential(state, 0, z)
    np.testing.assert_allclose(
        got, [[0, 0.5 / z.z], [0.5 * z.z, 0]], atol=1e-15)

    state1 = single_site(0.5, site=1)
    got = reduced_potential(state1, 1, 1j)
    np.testing.assert_allclose(got, [[0, 0.5j], [-0.5j, 0]], atol=1e-15)
    np.testing.assert_allclose(got, brute_step(0.5, 1, 1j), atol=1e-15)


def test_reduced_potential_matches_brute_form_at_random_points():
    rng = np.random.default_rng(5)
    state = LatticeState(n_min=-6, values=rng.uniform(-0.5, 0.5, 13))
    for _ in range(20):
        theta = rng.uniform(-np.pi, np.pi)
        n = int(rng.integers(-6, 7))
        z = UnitCirclePoint.from_theta(theta)
        np.testing.assert_allclose(
            reduced_potential(state, n, z),
            brute_step(state.value_at(n), n, z.z), atol=1e-13)


def test_reduced_potential_rejects_off_circle():
    with pytest.raises(DomainError):
        reduced_potential(single_site(0.3), 0, 1.2 + 0j)


def test_jost_minus_examples():
    z = UnitCirclePoint.from_theta(1.1)
    zero = LatticeState(n_min=-3, values=np.zeros(7))
    np.testing.assert_allclose(jost_minus(zero, z, 2), np.eye(2), atol=1e-15)

    state = single_site(0.4)
    got = jost_minus(state, z, 1)
    np.testing.assert_allclose(
        got, [[1, 0.4 / z.z], [0.4 * z.z, 1]], atol=1e-15)


def test_jost_minus_matches_summation_equation():
    # two-term evaluation of Y_n = I + sum_{k<n} B_k Y_k
    q0, q1 = 0.35, -0.2
    state = LatticeState(n_min=0, values=np.array([q0, q1]))
    z = UnitCirclePoint.from_theta(-0.6)
    y0 = np.eye(2, dtype=complex)
    y1 = y0 + brute_step(q0, 0, z.z) @ y0
    y2 = y1 + brute_step(q1, 1, z.z) @ y1
    np.testing.assert_allclose(jost_minus(state, z, 2), y2, atol=1e-14)


def test_jost_plus_examples():
    z = UnitCirclePoint.from_theta(0.8)
    zero = LatticeState(n_min=-3, values=np.zeros(7))
    np.testing.assert_allclose(jost_plus(zero, z, -1), np.eye(2), atol=1e-15)

    c = 0.4
    state = single_site(c)
    got = jost_plus(state, z, 0)
    expect = np.array([[1, -c / z.z], [-c * z.z, 1]]) / (1 - c * c)
    np.testing.assert_allclose(got, expect, atol=1e-14)

    # one site past the support the backward product is empty
    np.testing.assert_allclose(jost_plus(state, z, 3), np.eye(2), atol=1e-15)


def test_jost_pair_container():
    state = single_site(0.4)
    pair = jost_pair(state, UnitCirclePoint.from_theta(0.5), 1)
    np.testing.assert_allclose(
        pair.y_minus, jost_minus(state, UnitCirclePoint.from_theta(0.5), 1))
    assert pair.at_site == 1
    assert abs(np.linalg.det(pair.y_plus)) > 0


def test_scattering_zero_data():
    zero = LatticeState(n_min=-3, values=np.zeros(7))
    sd = scattering_coefficients(zero, UnitCirclePoint.from_theta(0.2))
    assert sd.a == 1.0 and sd.b == 0.0 and sd.r == 0.0


def test_scattering_single_site_closed_form():
    c = 0.3
    state = single_site(c)
    for pt in circle_points(64):
        for n_eval in (0, 1):
            sd = scattering_coefficients(state, pt, n_eval=n_eval)
            assert abs(sd.a - 1.0) < 1e-13
            assert abs(sd.b - c * pt.z) < 1e-13
            assert abs(sd.r - c * pt.z) < 1e-13


def test_unitarity_random_data():
    rng = np.random.default_rng(12)
    state = LatticeState(n_min=-4, values=rng.uniform(-0.5, 0.5, 8))
    c_inf = conserved_c_inf(state)
    for pt in circle_points(64):
        sd = scattering_coefficients(state, pt)
        assert abs(abs(sd.a) ** 2 - abs(sd.b) ** 2 - c_inf) < 1e-10
        assert abs(sd.r) < 1.0
        assert sd.c_inf == pytest.approx(c_inf)


def test_site_independence():
    rng = np.random.default_rng(4)
    state = LatticeState(n_min=-5, values=rng.uniform(-0.5, 0.5, 11))
    pt = UnitCirclePoint.from_theta(0.33)
    base = scattering_coefficients(state, pt, n_eval=-8)
    for n_eval in (-2, 0, 3, 6, 20):
        sd = scattering_coefficients(state, pt, n_eval=n_eval)
        assert abs(sd.a - base.a) < 1e-12
        assert abs(sd.b - base.b) < 1e-12


def test_conjugation_symmetry_real_data():
    rng = np.random.default_rng(9)
    state = LatticeState(n_min=-5, values=rng.uniform(-0.5, 0.5, 11))
    for theta in rng.uniform(-np.pi, np.pi, 12):
        plus = scattering_coefficients(state, UnitCirclePoint.from_theta(theta))
        minus = scattering_coefficients(state, UnitCirclePoint.from_theta(-theta))
        assert abs(minus.r - plus.r.conjugate()) < 1e-12
        assert abs(minus.a - plus.a.conjugate()) < 1e-12


def test_a_tends_to_one_radially():
    rng = np.random.default_rng(12)
    state = LatticeState(n_min=-4, values=rng.uniform(-0.5, 0.5, 8))
    gaps = []
    for radius in (10.0, 100.0):
        z = radius * cmath.exp(0.4j)
        ym = jost_minus(state, z, state.n_max + 1)
        gaps.append(abs(ym[0, 0] - 1.0))  # a(z) with Y+ = I at that site
    assert gaps[0] > gaps[1]
    assert gaps[1] < 1e-3


def test_reflection_grid_single_site():
    c = 0.3
    grid = reflection_grid(single_site(c), 64)
    for pt, val in zip(grid.points, grid.values):
        assert abs(val - c * pt.z) < 1e-13
    assert grid.max_abs_r == pytest.approx(c, abs=1e-13)
    # trigonometric interpolation is exact for polynomial r
    z = cmath.exp(0.123j)
    assert abs(grid.evaluate(z) - c * z) < 1e-12


def test_reflection_grid_zero_and_validation():
    zero = LatticeState(n_min=-2, values=np.zeros(5))
    grid = reflection_grid(zero, 64)
    assert np.all(grid.values == 0.0)
    with pytest.raises(ValueError):
        reflection_grid(zero, 63)
    with pytest.raises(ValueError):
        reflection_grid(zero, 32)


def test_reflection_too_large():
    state = single_site(1.0 - 1e-9)
    with pytest.raises(ReflectionTooLargeError):
        reflection_grid(state, 64)


def test_staggered_rotates_spectral_parameter():
    # r_staggered(z) = r(iz)/i, exactly, for any real data
    rng = np.random.default_rng(21)
    state = LatticeState(n_min=-5, values=rng.uniform(-0.5, 0.5, 11))
    r_plain = reflection_evaluator(state)
    r_stag = reflection_evaluator(staggered(state))
    for theta in rng.uniform(-np.pi, np.pi, 10):
        z = cmath.exp(1j * theta)
        assert abs(r_stag(z) - r_plain(1j * z) / 1j) < 1e-12


def test_unit_circle_point_validation():
    with pytest.raises(DomainError):
        UnitCirclePoint.from_z(1.1 + 0j)
    pt = UnitCirclePoint.from_theta(4.0)  # wraps into (-pi, pi]
    assert -np.pi < pt.theta <= np.pi
    assert abs(pt.z - cmath.exp(1j * pt.theta)) < 1e-15
