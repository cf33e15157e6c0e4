import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tandem.behavior import (
    ThresholdDist,
    cgpr_decide,
    cgr_decide,
    expected_team_loss,
    region_weights,
    reliance,
    reliance_weighted,
    simulate_team_choices,
    simulate_team_decisions,
    team_loss_decomposition,
)
from tandem.errors import ConfigError, EmptyAlignmentRegionError


class CountingRng:
    """Wraps a generator and counts scalar uniform draws."""

    def __init__(self, seed=0):
        self._rng = np.random.default_rng(seed)
        self.calls = 0

    def random(self, *args, **kwargs):
        self.calls += 1
        return self._rng.random(*args, **kwargs)


# --- threshold distributions


def test_point_threshold_weights():
    ft = ThresholdDist.point(0.6)
    conf = np.array([0.2, 0.6, 0.61, 0.9])
    # low region means conf <= tau: the judge defers at a tie
    assert np.array_equal(ft.weight_low(conf), [1.0, 1.0, 0.0, 0.0])
    w_high, w_low = region_weights(conf, ft)
    assert np.allclose(w_high + w_low, 1.0)


def test_uniform_threshold_weights_match_sampling():
    ft = ThresholdDist.uniform(0.3, 0.9)
    conf = np.array([0.1, 0.3, 0.6, 0.9, 1.0])
    assert np.allclose(ft.weight_low(conf), [1.0, 1.0, 0.5, 0.0, 0.0])
    rng = np.random.default_rng(0)
    taus = ft.sample(rng, (200_000,))
    for c, w in zip(conf, ft.weight_low(conf)):
        assert abs((c <= taus).mean() - w) < 0.005


def test_threshold_serialization_round_trip():
    for ft in (ThresholdDist.point(0.4), ThresholdDist.uniform(0.0, 1.0)):
        assert ThresholdDist.from_dict(ft.to_dict()) == ft
    with pytest.raises(ConfigError, match="kind"):
        ThresholdDist.from_dict({"kind": "beta"})


def test_threshold_validation():
    with pytest.raises(ConfigError):
        ThresholdDist.point(1.5)
    with pytest.raises(ConfigError):
        ThresholdDist.uniform(0.8, 0.2)


# --- single decisions


def test_cgpr_draws_nothing_above_threshold():
    rng = CountingRng()
    out = cgpr_decide(y_h=1, y_m=-1, conf_h=0.9, tau=0.5, r=1.0, rng=rng)
    assert out == 1
    assert rng.calls == 0


def test_cgpr_draws_exactly_once_below_threshold():
    rng = CountingRng()
    cgpr_decide(y_h=1, y_m=-1, conf_h=0.3, tau=0.5, r=0.5, rng=rng)
    assert rng.calls == 1


def test_cgpr_at_r_one_matches_cgr():
    rng = CountingRng()
    for conf in (0.2, 0.5, 0.8):
        got = cgpr_decide(y_h=1, y_m=-1, conf_h=conf, tau=0.5, r=1.0, rng=rng)
        assert got == cgr_decide(y_h=1, y_m=-1, conf_h=conf, tau=0.5)


def test_cgpr_reliance_frequency():
    rng = np.random.default_rng(0)
    r = 0.3
    picks = [cgpr_decide(1, -1, 0.2, 0.5, r, rng) for _ in range(20_000)]
    took_model = np.mean([p == -1 for p in picks])
    assert abs(took_model - r) < 3 * np.sqrt(r * (1 - r) / 20_000)


# --- reliance estimation


def test_reliance_hand_example():
    model = np.array([1, 1, -1, -1])
    human = np.array([1, -1, -1, 1])
    mask = np.array([True, True, True, False])
    state = reliance(model, human, mask)
    assert state.r == pytest.approx(1.0 - 1.0 / 3.0)
    assert not state.degenerate


def test_reliance_empty_region_fallback_and_raise():
    model = np.array([1, -1])
    human = np.array([1, 1])
    mask = np.zeros(2, dtype=bool)
    with pytest.warns(UserWarning, match="full trust"):
        state = reliance(model, human, mask)
    assert state.r == 1.0 and state.degenerate
    with pytest.raises(EmptyAlignmentRegionError):
        reliance(model, human, mask, on_empty="raise")


def test_weighted_reliance_reduces_to_masked_at_point_threshold():
    rng = np.random.default_rng(3)
    conf = rng.uniform(size=200)
    model = rng.choice([-1, 1], size=200)
    human = rng.choice([-1, 1], size=200)
    ft = ThresholdDist.point(0.5)
    w_high, _ = region_weights(conf, ft)
    soft = reliance_weighted(model, human, w_high)
    hard = reliance(model, human, conf > 0.5)
    assert soft.r == pytest.approx(hard.r)


# --- sampled team decisions


def test_choices_and_decisions_agree():
    rng_a = np.random.default_rng(12)
    rng_b = np.random.default_rng(12)
    y_h = np.array([1, -1, 1, -1])
    y_m = np.array([-1, -1, 1, 1])
    conf = np.array([0.9, 0.2, 0.4, 0.7])
    ft = ThresholdDist.uniform(0.0, 1.0)
    take = simulate_team_choices(conf, ft, 0.6, 50, rng_a)
    dec = simulate_team_decisions(y_h, y_m, conf, ft, 0.6, 50, rng_b)
    assert np.array_equal(dec, np.where(take, y_m, y_h))


def test_zero_reliance_keeps_human_answers():
    rng = np.random.default_rng(0)
    y_h = np.array([1, -1, 1])
    y_m = np.array([-1, 1, -1])
    conf = np.array([0.1, 0.5, 0.9])
    ft = ThresholdDist.uniform(0.0, 1.0)
    dec = simulate_team_decisions(y_h, y_m, conf, ft, 0.0, 200, rng)
    assert np.array_equal(dec, np.broadcast_to(y_h, dec.shape))


# --- closed-form team loss


def _random_team(rng, n=40):
    y = rng.choice([-1, 1], size=n)
    y_h = np.where(rng.random(n) < 0.7, y, -y)
    y_m = np.where(rng.random(n) < 0.8, y, -y)
    conf = rng.uniform(size=n)
    return y, y_h, y_m, conf


def test_expected_loss_trivial_cases():
    rng = np.random.default_rng(5)
    y, y_h, y_m, conf = _random_team(rng)
    ft = ThresholdDist.uniform(0.0, 1.0)
    human_loss = float((y_h != y).mean())
    # r = 0 collapses to the judge alone
    assert expected_team_loss(y, y_h, y_m, conf, ft, 0.0) == pytest.approx(human_loss)
    # a model that copies the judge changes nothing at any reliance
    assert expected_team_loss(y, y_h, y_h, conf, ft, 0.37) == pytest.approx(human_loss)
    # thresholds below every confidence leave the judge alone
    low = ThresholdDist.point(0.0)
    loss_low = expected_team_loss(y, y_h, y_m, np.full_like(conf, 0.5), low, 1.0)
    assert loss_low == pytest.approx(human_loss)


def test_decomposition_identity_and_monte_carlo():
    rng = np.random.default_rng(6)
    ft = ThresholdDist.uniform(0.2, 0.8)
    for _ in range(10):
        y, y_h, y_m, conf = _random_team(rng)
        r = float(rng.uniform())
        parts = team_loss_decomposition(y, y_h, y_m, conf, ft, r)
        total = expected_team_loss(y, y_h, y_m, conf, ft, r)
        assert parts["total"] == pytest.approx(total, abs=1e-12)
        recomposed = parts["own_region_human"] + parts["low_model"] + \
            (parts["low_human"] - parts["low_model"]) * (1.0 - r)
        assert recomposed == pytest.approx(total, abs=1e-12)

    y, y_h, y_m, conf = _random_team(rng, n=64)
    r = 0.45
    draws = 40_000
    dec = simulate_team_decisions(y_h, y_m, conf, ft, r, draws, rng)
    per_draw = (dec != y).mean(axis=1)
    mc = per_draw.mean()
    se = per_draw.std(ddof=1) / np.sqrt(draws)
    assert abs(mc - expected_team_loss(y, y_h, y_m, conf, ft, r)) <= 3 * se + 1e-12


@settings(max_examples=60, deadline=None)
@given(
    r=st.floats(0.0, 1.0),
    tau=st.floats(0.0, 1.0),
    seed=st.integers(0, 2**20),
)
def test_expected_loss_stays_in_unit_interval(r, tau, seed):
    rng = np.random.default_rng(seed)
    y, y_h, y_m, conf = _random_team(rng, n=25)
    loss = expected_team_loss(y, y_h, y_m, conf, ThresholdDist.point(tau), r)
    assert 0.0 <= loss <= 1.0
