"""Nash equilibria of the symmetric transmission game.

Pure equilibria come from exhaustive best-response enumeration over all
3^K profiles. The symmetric mixed equilibrium is piecewise in the
reward: below the low cost nobody transmits; up to the high cost only
low power is mixed with silence; up to the full-transmission threshold
all three actions are mixed; beyond it silence drops out and the split
between power levels is the root of a monotone one-dimensional
indifference equation, found by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator

import numpy as np

from .game import (
    STRATEGY_ORDER,
    GameConfig,
    MixedStrategy,
    Strategy,
    expected_payoff,
)

# Probability below which an action is treated as outside the support.
SUPPORT_EPS = 1e-12

BISECT_WIDTH = 1e-12
BISECT_MAX_ITER = 200

# 3^K enumeration guard: K <= 12.
MAX_ENUMERATION_PROFILES = 10**6


class Regime(Enum):
    """Which closed-form branch of the mixed equilibrium applies."""

    NO_TRANSMIT = "no_transmit"
    LOW_ONLY = "low_only"
    INTERIOR = "interior"
    FULL_TRANSMIT = "full_transmit"


@dataclass(frozen=True)
class NESolution:
    """Symmetric mixed equilibrium with per-action payoffs and diagnostics.

    ``residual`` is the largest deviation of a support action's payoff
    from the equilibrium payoff; it measures how well the indifference
    conditions are satisfied numerically.
    """

    strategy: MixedStrategy
    regime: Regime
    payoffs: tuple[float, float, float]
    equilibrium_payoff: float
    residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": {
                "high": self.strategy.high,
                "low": self.strategy.low,
                "no_transmit": self.strategy.no_transmit,
            },
            "regime": self.regime.value,
            "payoffs": {
                "H": self.payoffs[0],
                "L": self.payoffs[1],
                "0": self.payoffs[2],
            },
            "equilibrium_payoff": self.equilibrium_payoff,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NESolution":
        return cls(
            strategy=MixedStrategy(
                data["strategy"]["high"], data["strategy"]["low"]
            ),
            regime=Regime(data["regime"]),
            payoffs=(
                data["payoffs"]["H"],
                data["payoffs"]["L"],
                data["payoffs"]["0"],
            ),
            equilibrium_payoff=data["equilibrium_payoff"],
            residual=data["residual"],
        )


@dataclass(frozen=True)
class PureNEList:
    """Pure profiles that survive the unilateral-deviation check."""

    profiles: tuple[tuple[Strategy, ...], ...]

    def __iter__(self) -> Iterator[tuple[Strategy, ...]]:
        return iter(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)

    def __contains__(self, profile: tuple[Strategy, ...]) -> bool:
        return tuple(profile) in self.profiles


@dataclass(frozen=True)
class EquilibriumCheck:
    """Indifference diagnostics for a symmetric profile.

    ``spread`` is the payoff gap inside the support; ``advantage`` is
    the best improvement any unused action offers over the profile's
    own expected payoff (negative when unused actions are worse).
    """

    payoffs: tuple[float, float, float]
    support: tuple[Strategy, ...]
    spread: float
    advantage: float
    epsilon: float
    passed: bool


def w_star(config: GameConfig) -> float:
    """Reward threshold above which the equilibrium never stays silent.

    Solves (cost_high / W)^(1/(K-1)) + (cost_low / W)^(1/(K-1)) = 1,
    which has the closed form below for any costs and K.
    """
    p = 1.0 / (config.num_users - 1)
    return (config.cost_high**p + config.cost_low**p) ** (config.num_users - 1)


def _strategy_no_transmit(config: GameConfig) -> tuple[float, float]:
    return 0.0, 0.0


def _strategy_low_only(config: GameConfig) -> tuple[float, float]:
    p = 1.0 / (config.num_users - 1)
    return 0.0, 1.0 - (config.cost_low / config.reward) ** p


def _strategy_interior(config: GameConfig) -> tuple[float, float]:
    p = 1.0 / (config.num_users - 1)
    a = 1.0 - (config.cost_high / config.reward) ** p
    b = 1.0 - (config.cost_low / config.reward) ** p
    return a, b


def _strategy_full_transmit(config: GameConfig) -> tuple[float, float]:
    b = solve_full_transmit_root(config)
    return 1.0 - b, b


def solve_full_transmit_root(config: GameConfig) -> float:
    """Low-power probability when silence has zero probability.

    Root of f(b) = W b^(K-1) - W (1-b)^(K-1) - (cost_high - cost_low)
    on [1/2, 1]. f is strictly increasing there, negative at 1/2 and
    positive at 1 whenever the reward is at or above the
    full-transmission threshold, so bisection cannot fail.
    """
    threshold = w_star(config)
    if config.reward < threshold:
        raise ValueError(
            f"reward {config.reward} is below the full-transmission "
            f"threshold {threshold}; no root exists in [1/2, 1]"
        )
    w = config.reward
    n = config.num_users - 1
    gap = config.cost_high - config.cost_low

    def f(b: float) -> float:
        return w * b**n - w * (1.0 - b) ** n - gap

    lo, hi = 0.5, 1.0
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mixed_ne(config: GameConfig) -> NESolution:
    """Symmetric mixed equilibrium for any reward level.

    Regime boundaries are half-open: a reward exactly on a boundary
    belongs to the higher regime. The branches agree at each boundary,
    so the choice does not change the strategy.
    """
    w = config.reward
    if w < config.cost_low:
        a, b = _strategy_no_transmit(config)
        regime = Regime.NO_TRANSMIT
    elif w < config.cost_high:
        a, b = _strategy_low_only(config)
        regime = Regime.LOW_ONLY
    elif w < w_star(config):
        a, b = _strategy_interior(config)
        regime = Regime.INTERIOR
    else:
        a, b = _strategy_full_transmit(config)
        regime = Regime.FULL_TRANSMIT

    strategy = MixedStrategy(a, b)
    payoffs = tuple(
        expected_payoff(s, strategy, config) for s in STRATEGY_ORDER
    )
    # Whenever silence is in the support, indifference pins the value to
    # silence's payoff, which is exactly zero.
    if strategy.no_transmit > SUPPORT_EPS:
        value = 0.0
    else:
        value = strategy.high * payoffs[0] + strategy.low * payoffs[1]
    residual = max(
        (
            abs(u - value)
            for s, u in zip(STRATEGY_ORDER, payoffs)
            if strategy.prob(s) > SUPPORT_EPS
        ),
        default=0.0,
    )
    return NESolution(
        strategy=strategy,
        regime=regime,
        payoffs=payoffs,
        equilibrium_payoff=value,
        residual=residual,
    )


def verify_epsilon_ne(
    strategy: MixedStrategy, config: GameConfig, epsilon: float
) -> EquilibriumCheck:
    """Check the indifference conditions of a symmetric profile.

    Passes iff support payoffs agree within ``epsilon`` and no unused
    action beats the profile's expected payoff by more than ``epsilon``.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    payoffs = tuple(
        expected_payoff(s, strategy, config) for s in STRATEGY_ORDER
    )
    support = tuple(
        s for s in STRATEGY_ORDER if strategy.prob(s) > SUPPORT_EPS
    )
    support_payoffs = [
        u for s, u in zip(STRATEGY_ORDER, payoffs) if s in support
    ]
    spread = max(support_payoffs) - min(support_payoffs)
    value = sum(
        strategy.prob(s) * u for s, u in zip(STRATEGY_ORDER, payoffs)
    )
    advantage = max(
        (
            u - value
            for s, u in zip(STRATEGY_ORDER, payoffs)
            if s not in support
        ),
        default=0.0,
    )
    return EquilibriumCheck(
        payoffs=payoffs,
        support=support,
        spread=spread,
        advantage=advantage,
        epsilon=epsilon,
        passed=spread <= epsilon and advantage <= epsilon,
    )


def pure_nash_equilibria(config: GameConfig) -> PureNEList:
    """All pure profiles where no player gains by deviating unilaterally.

    Payoff-equal deviations are allowed (weak inequality), so tied
    profiles count as equilibria.
    """
    k = config.num_users
    if 3**k > MAX_ENUMERATION_PROFILES:
        raise ValueError(
            f"enumerating 3^{k} profiles exceeds the limit; "
            "use mixed_ne for the symmetric equilibrium instead"
        )
    n_profiles = 3**k
    # Action codes 0=H, 1=L, 2=silent; one profile per row, player 0 in
    # the most significant digit.
    index = np.arange(n_profiles)
    place = 3 ** np.arange(k - 1, -1, -1)
    codes = (index[:, None] // place[None, :]) % 3
    codes = codes.astype(np.int8)

    w = config.reward
    costs = np.array([config.cost_high, config.cost_low, 0.0])
    n_high = (codes == 0).sum(axis=1)
    n_low = (codes == 1).sum(axis=1)

    is_ne = np.ones(n_profiles, dtype=bool)
    for player in range(k):
        own = codes[:, player]
        success = ((own == 0) & (n_high == 1)) | ((own == 1) & (n_low == 1))
        current = w * success - costs[own]
        for alt in range(3):
            alt_high = n_high - (own == 0) + (1 if alt == 0 else 0)
            alt_low = n_low - (own == 1) + (1 if alt == 1 else 0)
            if alt == 0:
                alt_reward = w * (alt_high == 1)
            elif alt == 1:
                alt_reward = w * (alt_low == 1)
            else:
                alt_reward = 0.0
            is_ne &= current >= alt_reward - costs[alt]
    profiles = tuple(
        tuple(STRATEGY_ORDER[c] for c in row) for row in codes[is_ne]
    )
    return PureNEList(profiles)
