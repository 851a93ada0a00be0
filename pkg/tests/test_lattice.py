import numpy as np
import pytest

from dmkdv import (
    BlowupError,
    InitialProfile,
    LatticeState,
    SpillError,
    conserved_c_inf,
    integrate,
    rho_zero,
    rhs,
    staggered,
    weighted_norm,
)


def single_site(c, half=20, center=0):
    q = np.zeros(2 * half + 1)
    q[half + center] = c
    return LatticeState(n_min=-half, values=q)


def test_rhs_zero_fixed_point():
    state = LatticeState(n_min=-5, values=np.zeros(11))
    assert np.all(rhs(state) == 0.0)


def test_rhs_single_site_by_hand():
    state = single_site(0.5, half=3)
    dq = rhs(state)
    expect = np.zeros(7)
    expect[2] = 0.5    # site -1 sees q_0 on its right
    expect[4] = -0.5   # site +1 sees q_0 on its left
    np.testing.assert_allclose(dq, expect)


def test_rhs_matches_finite_difference_of_integration():
    rng = np.random.default_rng(7)
    state = LatticeState(n_min=-10, values=rng.uniform(-0.5, 0.5, 21))
    h = 1e-4
    fwd = integrate(state, h, h / 10, spill_tol=1.0)
    bwd = integrate(state, -h, h / 10, spill_tol=1.0)
    fd = (fwd.values - bwd.values) / (2 * h)
    dq = rhs(state)
    assert np.max(np.abs(fd - dq)) / np.max(np.abs(dq)) < 1e-8


def test_conserved_product_examples():
    assert conserved_c_inf(LatticeState(n_min=0, values=np.zeros(4))) == 1.0
    assert conserved_c_inf(single_site(0.3)) == pytest.approx(0.91, abs=1e-15)
    two = LatticeState(n_min=0, values=np.array([0.3, 0.4]))
    assert conserved_c_inf(two) == pytest.approx(0.7644, abs=1e-15)
    assert rho_zero(two) == pytest.approx(np.sqrt(1 - 0.7644), rel=1e-14)


def test_weighted_norm_examples():
    assert weighted_norm(LatticeState(n_min=-2, values=np.zeros(5)), 3) == 0.0
    assert weighted_norm(single_site(0.4), 0) == pytest.approx(0.4)
    assert weighted_norm(single_site(-0.4, center=2), 1) == pytest.approx(1.2)
    with pytest.raises(ValueError):
        weighted_norm(single_site(0.4), -1)


def test_integrate_zero_state_stays_zero():
    state = LatticeState(n_min=-30, values=np.zeros(61))
    out = integrate(state, 7.0, 0.05)
    assert np.all(out.values == 0.0)
    assert out.t == 7.0


def test_integrate_order_four():
    state = single_site(0.3, half=40)
    ref = integrate(state, 5.0, 0.0125, spill_tol=1.0)
    errs = []
    for dt in (0.2, 0.1):
        got = integrate(state, 5.0, dt, spill_tol=1.0)
        errs.append(np.max(np.abs(got.values - ref.values)))
    order = np.log2(errs[0] / errs[1])
    assert 3.7 < order < 4.3


def test_conserved_quantity_drift():
    state = single_site(0.3, half=240)
    final = integrate(state, 50.0, 0.01)
    assert abs(conserved_c_inf(final) - conserved_c_inf(state)) < 1e-8


def test_sup_norm_bound_holds():
    rng = np.random.default_rng(3)
    state = LatticeState(n_min=-60, values=rng.uniform(-0.4, 0.4, 121))
    bound = rho_zero(state) + 1e-9
    current = state
    for _ in range(5):
        current = integrate(current, current.t + 2.0, 0.01, spill_tol=1.0)
        assert np.max(np.abs(current.values)) <= bound


def test_reversal_symmetry_single_step():
    state = single_site(0.4, half=15)
    for dt in (0.1, 0.05):
        fwd = integrate(state, dt, dt, spill_tol=1.0)
        back = integrate(fwd, 0.0, dt, spill_tol=1.0)
        assert np.max(np.abs(back.values - state.values)) < 10 * dt ** 5


def test_construction_rejects_non_defocusing():
    with pytest.raises(ValueError):
        LatticeState(n_min=0, values=np.array([0.2, 1.0]))
    with pytest.raises(ValueError):
        InitialProfile(kind="single_site", amplitude=1.2)


def test_blowup_on_oversized_step():
    state = single_site(0.9, half=10)
    with pytest.raises(BlowupError):
        integrate(state, 50.0, 5.0, spill_tol=1.0)


def test_spill_error_for_small_window():
    state = single_site(0.3, half=6)
    with pytest.raises(SpillError):
        integrate(state, 10.0, 0.01, spill_tol=1e-10)


def test_profiles():
    gauss = InitialProfile(kind="gaussian", amplitude=0.25, width=2.0)
    state = gauss.realize(-30, 30)
    assert np.max(np.abs(state.values)) == pytest.approx(0.25)
    assert state.value_at(0) == pytest.approx(0.25)

    custom = InitialProfile(kind="custom_list", center=1, custom=(0.1, -0.2))
    state = custom.realize(-3, 3)
    assert state.value_at(1) == 0.1 and state.value_at(2) == -0.2

    zero = InitialProfile(kind="zero")
    assert np.all(zero.realize(-2, 2).values == 0.0)

    with pytest.raises(ValueError):
        InitialProfile(kind="sawtooth")
    with pytest.raises(ValueError):
        custom.realize(2, 3)  # custom values do not fit


def test_support_state_covers_profile():
    gauss = InitialProfile(kind="gaussian", amplitude=0.25, width=2.0)
    support = gauss.support_state()
    assert weighted_norm(support, 0) == pytest.approx(
        weighted_norm(gauss.realize(-400, 400), 0), rel=1e-12)


def test_staggered_signs_and_involution():
    rng = np.random.default_rng(11)
    state = LatticeState(n_min=-4, values=rng.uniform(-0.5, 0.5, 9))
    stag = staggered(state)
    for n in range(-4, 5):
        assert stag.value_at(n) == pytest.approx((-1) ** n * state.value_at(n))
    again = staggered(stag)
    np.testing.assert_allclose(again.values, state.values)
