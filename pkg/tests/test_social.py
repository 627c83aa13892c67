"""Tests for the average-payoff maximizer and the anarchy ratio."""

from __future__ import annotations

import numpy as np
import pytest

from noma_aloha.equilibrium import mixed_ne
from noma_aloha.game import GameConfig, MixedStrategy, expected_payoff
from noma_aloha.social import (
    average_payoff,
    average_payoff_gradient,
    coordinate_ascent_optimum,
    maximize_average_payoff,
)


def grid_optimum(config: GameConfig, resolution: float = 1e-3):
    """Dense-grid oracle over the probability simplex."""
    points = np.arange(0.0, 1.0 + resolution / 2, resolution)
    a, b = np.meshgrid(points, points, indexing="ij")
    k = config.num_users
    value = (
        config.reward * (a * (1 - a) ** (k - 1) + b * (1 - b) ** (k - 1))
        - config.cost_high * a
        - config.cost_low * b
    )
    value[a + b > 1.0] = -np.inf
    best = np.unravel_index(np.argmax(value), value.shape)
    return float(a[best]), float(b[best]), float(value[best])


class TestAveragePayoff:
    def test_documented_point(self) -> None:
        """5 * (0.21 + 0.24) - 0.6 - 0.4 = 1.25."""
        config = GameConfig(2, 5.0)
        assert average_payoff(MixedStrategy(0.3, 0.4), config) == pytest.approx(1.25)

    @pytest.mark.parametrize("k,w", [(2, 0.0), (3, 5.0), (8, 20.0)])
    def test_silent_profile_is_zero(self, k, w) -> None:
        assert average_payoff(MixedStrategy(0.0, 0.0), GameConfig(k, w)) == 0.0

    @pytest.mark.parametrize("w", [10.0, 100.0, 1e4])
    def test_even_split_scales_linearly(self, w) -> None:
        """At (1/2, 1/2) with two users the value is W/2 - 3/2."""
        config = GameConfig(2, w)
        assert average_payoff(MixedStrategy(0.5, 0.5), config) == pytest.approx(
            w / 2 - 1.5
        )

    def test_equals_expected_payoff_of_profile_against_itself(self) -> None:
        rng = np.random.default_rng(31)
        for _ in range(25):
            k = int(rng.integers(2, 7))
            config = GameConfig(k, float(rng.uniform(0, 15)))
            a = rng.uniform(0, 1)
            sigma = MixedStrategy(a, rng.uniform(0, 1 - a))
            assert average_payoff(sigma, config) == pytest.approx(
                expected_payoff(sigma, sigma, config), abs=1e-12
            )

    def test_gradient_matches_central_differences(self) -> None:
        rng = np.random.default_rng(37)
        step = 1e-6
        for _ in range(20):
            k = int(rng.integers(2, 8))
            config = GameConfig(k, float(rng.uniform(0.5, 20)))
            a = rng.uniform(0.05, 0.45)
            b = rng.uniform(0.05, 0.45)
            da, db = average_payoff_gradient(MixedStrategy(a, b), config)
            fd_a = (
                average_payoff(MixedStrategy(a + step, b), config)
                - average_payoff(MixedStrategy(a - step, b), config)
            ) / (2 * step)
            fd_b = (
                average_payoff(MixedStrategy(a, b + step), config)
                - average_payoff(MixedStrategy(a, b - step), config)
            ) / (2 * step)
            assert da == pytest.approx(fd_a, abs=1e-5)
            assert db == pytest.approx(fd_b, abs=1e-5)


class TestMaximizeAveragePayoff:
    def test_two_user_closed_form_point(self) -> None:
        opt = maximize_average_payoff(GameConfig(2, 5.0))
        assert opt.strategy.high == pytest.approx(0.3, abs=1e-12)
        assert opt.strategy.low == pytest.approx(0.4, abs=1e-12)
        assert opt.average_payoff == pytest.approx(1.25, abs=1e-12)

    def test_small_reward_stays_silent(self) -> None:
        opt = maximize_average_payoff(GameConfig(2, 0.5))
        assert opt.strategy.as_tuple() == (0.0, 0.0, 1.0)
        assert opt.average_payoff == 0.0
        assert opt.poa is None

    def test_anarchy_ratio_at_reward_five(self) -> None:
        opt = maximize_average_payoff(GameConfig(2, 5.0))
        assert opt.ne_payoff == pytest.approx(1.0, abs=1e-10)
        assert opt.poa == pytest.approx(0.8, abs=1e-10)

    def test_zero_reward(self) -> None:
        opt = maximize_average_payoff(GameConfig(2, 0.0))
        assert opt.strategy.as_tuple() == (0.0, 0.0, 1.0)
        assert opt.poa is None

    @pytest.mark.parametrize("k,w", [(3, 5.0), (5, 10.0), (5, 40.0)])
    def test_matches_grid_oracle(self, k, w) -> None:
        config = GameConfig(k, w)
        opt = maximize_average_payoff(config)
        grid_a, grid_b, grid_value = grid_optimum(config)
        assert opt.average_payoff >= grid_value - 1e-9
        assert opt.strategy.high == pytest.approx(grid_a, abs=2e-3)
        assert opt.strategy.low == pytest.approx(grid_b, abs=2e-3)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_dominates_equilibrium(self, k) -> None:
        for w in np.arange(0.0, 30.0, 0.5):
            config = GameConfig(k, float(w))
            opt = maximize_average_payoff(config)
            ne_value = average_payoff(mixed_ne(config).strategy, config)
            assert opt.average_payoff >= ne_value - 1e-9

    def test_anarchy_ratio_within_unit_interval(self) -> None:
        for w in np.arange(0.0, 25.0, 0.5):
            opt = maximize_average_payoff(GameConfig(2, float(w)))
            if opt.poa is not None:
                assert -1e-9 <= opt.poa <= 1 + 1e-9

    def test_anarchy_vanishes_for_large_rewards(self) -> None:
        opt = maximize_average_payoff(GameConfig(2, 1e4))
        assert opt.poa is not None
        assert opt.poa > 0.999

    def test_low_probability_dominates_and_both_approach_half(self) -> None:
        for w in np.arange(0.0, 20.0, 0.25):
            opt = maximize_average_payoff(GameConfig(2, float(w)))
            assert opt.strategy.low >= opt.strategy.high
        big = maximize_average_payoff(GameConfig(2, 1e4))
        assert big.strategy.high == pytest.approx(0.5, abs=1e-3)
        assert big.strategy.low == pytest.approx(0.5, abs=1e-3)

    @pytest.mark.parametrize("w", [0.5, 1.5, 3.0, 5.0, 25.0])
    def test_numeric_ascent_matches_closed_form(self, w) -> None:
        config = GameConfig(2, w)
        numeric = coordinate_ascent_optimum(config)
        closed = maximize_average_payoff(config).strategy
        assert numeric.high == pytest.approx(closed.high, abs=1e-8)
        assert numeric.low == pytest.approx(closed.low, abs=1e-8)
