import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_force_amplitudes, operator_matrix_evolve, random_ic
from qwalk.coin import CoinAngles, make_su2_coin, make_theta_coin
from qwalk.stats import moments
from qwalk.walk import (
    SYMMETRIC_IC,
    UP_IC,
    InitialCoinState,
    evolve,
    init_state,
    position_distribution,
    step_unitary,
)

HADAMARD = make_theta_coin(math.pi / 4)

angle_st = st.floats(0.0, 2 * math.pi, allow_nan=False)
seed_st = st.integers(0, 2**32 - 1)


def test_init_state_point_mass():
    state = init_state(UP_IC)
    dist = position_distribution(state)
    assert dist.n == 0
    assert dist.probs[0] == 1.0


def test_init_state_known_initial_conditions():
    # equal-weight state and the (-i/2, i*sqrt(3)/2) state are both valid
    for ic in (SYMMETRIC_IC, InitialCoinState(-0.5j, 0.5j * math.sqrt(3))):
        dist = position_distribution(init_state(ic))
        assert dist.probs[0] == pytest.approx(1.0, abs=1e-12)


def test_init_state_rejects_unnormalized():
    with pytest.raises(ValueError, match="normalized"):
        InitialCoinState(1.0, 0.1)


def test_single_hadamard_step():
    state = step_unitary(init_state(UP_IC), HADAMARD)
    r = 1 / math.sqrt(2)
    assert state.amplitude(1)[0] == pytest.approx(r)
    assert state.amplitude(-1)[1] == pytest.approx(r)
    dist = position_distribution(state)
    np.testing.assert_allclose(dist.probs, [0.5, 0.0, 0.5], atol=1e-15)


def test_three_hadamard_steps_hand_values():
    # hand iteration of the recurrence, cross-checked against full path
    # enumeration over the 2^3 coin histories
    state = evolve(UP_IC, HADAMARD, 3)
    dist = position_distribution(state)
    expected = {-3: 1 / 8, -1: 1 / 8, 1: 5 / 8, 3: 1 / 8}
    for j, p in expected.items():
        assert dist.probs[j + 3] == pytest.approx(p, abs=1e-15)
    a_bf, b_bf = brute_force_amplitudes(1.0, 0.0, HADAMARD.matrix, 3)
    np.testing.assert_allclose(state.a, a_bf, atol=1e-14)
    np.testing.assert_allclose(state.b, b_bf, atol=1e-14)


def test_theta_zero_walk_is_ballistic():
    n = 25
    dist = position_distribution(evolve(SYMMETRIC_IC, make_theta_coin(0.0), n))
    assert dist.probs[0] == pytest.approx(0.5, abs=1e-12)    # site -n
    assert dist.probs[-1] == pytest.approx(0.5, abs=1e-12)   # site +n
    assert np.all(dist.probs[1:-1] == 0.0)


def test_evolve_zero_steps_is_identity():
    state = evolve(SYMMETRIC_IC, HADAMARD, 0)
    assert state.n == 0
    assert state.amplitude(0) == (SYMMETRIC_IC.a0, SYMMETRIC_IC.b0)
    with pytest.raises(ValueError):
        evolve(SYMMETRIC_IC, HADAMARD, -1)


def test_hadamard_100_symmetric_and_bimodal():
    dist = position_distribution(evolve(SYMMETRIC_IC, HADAMARD, 100))
    np.testing.assert_allclose(dist.probs, dist.probs[::-1], atol=1e-12)
    right = dist.probs[101:]
    peak = int(np.argmax(right)) + 1
    assert abs(peak - 100 / math.sqrt(2)) < 5
    assert dist.probs[100 + peak] > dist.probs[100]  # outer peak beats center


@pytest.mark.parametrize("theta", [math.pi / 8, math.pi / 4, 3 * math.pi / 8])
def test_variance_tracks_one_minus_sin_theta(theta):
    n = 100
    dist = position_distribution(evolve(SYMMETRIC_IC, make_theta_coin(theta), n))
    assert moments(dist).variance / n**2 == pytest.approx(1 - math.sin(theta), abs=0.02)


@given(xi=angle_st, theta=angle_st, zeta=angle_st, seed=seed_st)
@settings(max_examples=30, deadline=None)
def test_norm_conserved_along_the_walk(xi, theta, zeta, seed):
    coin = make_su2_coin(CoinAngles(xi, theta, zeta))
    a0, b0 = random_ic(np.random.default_rng(seed))
    state = init_state(InitialCoinState(a0, b0))
    for _ in range(60):
        state = step_unitary(state, coin)
        assert abs(state.norm() - 1.0) < 1e-12


@given(xi=angle_st, theta=angle_st, zeta=angle_st, seed=seed_st)
@settings(max_examples=30, deadline=None)
def test_parity_sites_carry_no_amplitude(xi, theta, zeta, seed):
    coin = make_su2_coin(CoinAngles(xi, theta, zeta))
    a0, b0 = random_ic(np.random.default_rng(seed))
    state = evolve(InitialCoinState(a0, b0), coin, 17)
    js = state.sites
    odd = (js + 17) % 2 == 1
    assert np.all(state.a[odd] == 0.0)
    assert np.all(state.b[odd] == 0.0)


@given(xi=angle_st, theta=angle_st, zeta=angle_st, seed=seed_st)
@settings(max_examples=30, deadline=None)
def test_only_eta_and_theta_shape_the_distribution(xi, theta, zeta, seed):
    # the phase difference eta = xi - zeta fully determines P_j for walks
    # started at the origin
    a0, b0 = random_ic(np.random.default_rng(seed))
    ic = InitialCoinState(a0, b0)
    full = position_distribution(evolve(ic, make_su2_coin(CoinAngles(xi, theta, zeta)), 30))
    reduced = position_distribution(
        evolve(ic, make_su2_coin(CoinAngles(xi - zeta, theta, 0.0)), 30)
    )
    np.testing.assert_allclose(full.probs, reduced.probs, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 10])
def test_recurrence_matches_path_enumeration(n):
    rng = np.random.default_rng(2024)
    coins = [HADAMARD] + [make_theta_coin(rng.uniform(0, math.pi)) for _ in range(5)]
    for coin in coins:
        a0, b0 = random_ic(rng)
        state = evolve(InitialCoinState(a0, b0), coin, n)
        a_bf, b_bf = brute_force_amplitudes(a0, b0, coin.matrix, n)
        np.testing.assert_allclose(state.a, a_bf, atol=1e-12)
        np.testing.assert_allclose(state.b, b_bf, atol=1e-12)


def test_recurrence_matches_operator_matrix():
    rng = np.random.default_rng(99)
    for _ in range(4):
        coin = make_su2_coin(
            CoinAngles(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi),
                       rng.uniform(0, 2 * math.pi))
        )
        a0, b0 = random_ic(rng)
        state = evolve(InitialCoinState(a0, b0), coin, 12)
        a_op, b_op = operator_matrix_evolve(a0, b0, coin.matrix, 12)
        np.testing.assert_allclose(state.a, a_op, atol=1e-13)
        np.testing.assert_allclose(state.b, b_op, atol=1e-13)


def test_position_distribution_sums_to_one():
    dist = position_distribution(evolve(SYMMETRIC_IC, HADAMARD, 200))
    assert dist.total() == pytest.approx(1.0, abs=1e-12)


def test_norm_holds_to_two_thousand_steps():
    state = init_state(SYMMETRIC_IC)
    coin = make_su2_coin(CoinAngles(0.9, 1.1, 0.3))
    for _ in range(2000):
        state = step_unitary(state, coin)
    assert abs(state.norm() - 1.0) < 1e-12
