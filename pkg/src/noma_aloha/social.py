"""Socially optimal symmetric strategy and the anarchy ratio.

The per-user average payoff under a common mixed strategy separates
into independent one-dimensional terms for the high and low power
probabilities, each unimodal on [0, 1] with its maximizer below 1/K.
Two users never benefit from coordinating on the same level, so the
simplex constraint is slack at the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

from .equilibrium import mixed_ne
from .game import GameConfig, MixedStrategy

ASCENT_STEP_TOL = 1e-10
ASCENT_MAX_ROUNDS = 200
SECTION_TOL = 1e-12


@dataclass(frozen=True)
class SocialOptimum:
    """Average-payoff maximizer with the equilibrium comparison.

    ``poa`` is equilibrium payoff over optimal payoff, in [0, 1]; it is
    None when the optimal payoff is zero (rewards too small for any
    transmission to pay off).
    """

    strategy: MixedStrategy
    average_payoff: float
    ne_payoff: float
    poa: Optional[float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": {
                "high": self.strategy.high,
                "low": self.strategy.low,
                "no_transmit": self.strategy.no_transmit,
            },
            "average_payoff": self.average_payoff,
            "ne_payoff": self.ne_payoff,
            "poa": self.poa,
        }


def average_payoff(strategy: MixedStrategy, config: GameConfig) -> float:
    """Per-user expected payoff when every user plays `strategy`."""
    k = config.num_users
    a, b = strategy.high, strategy.low
    gain = config.reward * (
        a * (1.0 - a) ** (k - 1) + b * (1.0 - b) ** (k - 1)
    )
    return gain - config.cost_high * a - config.cost_low * b


def average_payoff_gradient(
    strategy: MixedStrategy, config: GameConfig
) -> tuple[float, float]:
    """Partial derivatives of `average_payoff` in the two probabilities."""
    k = config.num_users
    a, b = strategy.high, strategy.low
    da = (
        config.reward * (1.0 - a) ** (k - 2) * (1.0 - k * a)
        - config.cost_high
    )
    db = config.reward * (1.0 - b) ** (k - 2) * (1.0 - k * b) - config.cost_low
    return da, db


def _maximize_section(f, lo: float, hi: float, tol: float = SECTION_TOL) -> float:
    """Golden-section maximizer of a unimodal function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def coordinate_ascent_optimum(
    config: GameConfig, start: tuple[float, float] = (0.25, 0.25)
) -> MixedStrategy:
    """Projected coordinate ascent over the probability simplex.

    Alternates exact one-dimensional maximization in each coordinate,
    keeping the iterate feasible, until the step falls below tolerance.
    """
    a, b = start
    for _ in range(ASCENT_MAX_ROUNDS):
        new_a = _maximize_section(
            lambda x: average_payoff(MixedStrategy(x, b), config), 0.0, 1.0 - b
        )
        new_b = _maximize_section(
            lambda x: average_payoff(MixedStrategy(new_a, x), config),
            0.0,
            1.0 - new_a,
        )
        step = max(abs(new_a - a), abs(new_b - b))
        a, b = new_a, new_b
        if step < ASCENT_STEP_TOL:
            break
    candidate = MixedStrategy(a, b)
    # The all-silent corner is optimal when transmission never pays;
    # prefer it over a numerically-zero iterate.
    silent = MixedStrategy(0.0, 0.0)
    if average_payoff(silent, config) >= average_payoff(candidate, config):
        return silent
    return candidate


def _two_user_optimum(config: GameConfig) -> MixedStrategy:
    # Stationary points of the separable quadratic, clamped at zero.
    w = config.reward
    if w == 0.0:
        return MixedStrategy(0.0, 0.0)
    a = max(0.0, (w - config.cost_high) / (2.0 * w))
    b = max(0.0, (w - config.cost_low) / (2.0 * w))
    return MixedStrategy(a, b)


def maximize_average_payoff(config: GameConfig) -> SocialOptimum:
    """Global maximizer of the symmetric average payoff, with the
    equilibrium payoff and the anarchy ratio for the same game."""
    if config.num_users == 2:
        strategy = _two_user_optimum(config)
    else:
        strategy = coordinate_ascent_optimum(config)
    best = average_payoff(strategy, config)
    ne_value = mixed_ne(config).equilibrium_payoff
    poa = ne_value / best if best > 0.0 else None
    return SocialOptimum(
        strategy=strategy,
        average_payoff=best,
        ne_payoff=ne_value,
        poa=poa,
    )
