"""Strategic-form model of the two-power-level random-access game.

K users share one slotted channel and may transmit at high power, at low
power, or stay silent. A packet sent at a given power level is decoded
iff it is the only transmission at that level in the slot, so one high
and one low transmission can succeed simultaneously. A decoded packet
earns a fixed reward; transmitting costs more at high power than low.

The per-slot payoff is reward minus transmit cost. It can be read as a
log-domain energy-efficiency figure (log throughput minus log transmit
power), but only the linear reward/cost form below is computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

# Slack absorbed when clamping solver output into the probability simplex.
PROB_SLACK = 1e-12


class Strategy(Enum):
    """Per-slot action: transmit high, transmit low, or stay silent."""

    HIGH = "H"
    LOW = "L"
    NO_TRANSMIT = "0"


# Row/column order of the two-player payoff table.
STRATEGY_ORDER = (Strategy.HIGH, Strategy.LOW, Strategy.NO_TRANSMIT)


@dataclass(frozen=True)
class GameConfig:
    """One game instance: population size, success reward, transmit costs."""

    num_users: int
    reward: float
    cost_high: float = 2.0
    cost_low: float = 1.0

    def __post_init__(self) -> None:
        if self.num_users < 2:
            raise ValueError(f"num_users must be >= 2, got {self.num_users}")
        if self.reward < 0:
            raise ValueError(f"reward must be >= 0, got {self.reward}")
        if not self.cost_high > self.cost_low > 0:
            raise ValueError(
                "costs must satisfy cost_high > cost_low > 0, got "
                f"({self.cost_high}, {self.cost_low})"
            )

    def cost(self, action: Strategy) -> float:
        """Transmit cost of a pure action; staying silent is free."""
        if action is Strategy.HIGH:
            return self.cost_high
        if action is Strategy.LOW:
            return self.cost_low
        return 0.0


@dataclass(frozen=True)
class MixedStrategy:
    """Probabilities of transmitting high and low; the rest is silence.

    Construction clamps float noise within ``PROB_SLACK`` into the
    simplex and rejects anything further out.
    """

    high: float
    low: float

    def __post_init__(self) -> None:
        if self.high < -PROB_SLACK or self.low < -PROB_SLACK:
            raise ValueError(f"negative probability: ({self.high}, {self.low})")
        if self.high + self.low > 1.0 + PROB_SLACK:
            raise ValueError(
                f"probabilities exceed 1: {self.high} + {self.low}"
            )
        high = min(max(self.high, 0.0), 1.0)
        low = min(max(self.low, 0.0), 1.0)
        if high + low > 1.0:
            low = 1.0 - high
        object.__setattr__(self, "high", high)
        object.__setattr__(self, "low", low)

    @property
    def no_transmit(self) -> float:
        return 1.0 - self.high - self.low

    def prob(self, action: Strategy) -> float:
        if action is Strategy.HIGH:
            return self.high
        if action is Strategy.LOW:
            return self.low
        return self.no_transmit

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.high, self.low, self.no_transmit)


@dataclass(frozen=True)
class Bimatrix:
    """3x3 table of (row payoff, column payoff) pairs in (H, L, 0) order."""

    entries: tuple[tuple[tuple[float, float], ...], ...]

    def __getitem__(
        self, key: tuple[Strategy, Strategy]
    ) -> tuple[float, float]:
        row, col = key
        return self.entries[STRATEGY_ORDER.index(row)][STRATEGY_ORDER.index(col)]

    def row_payoff(self, row: Strategy, col: Strategy) -> float:
        return self[row, col][0]


def reward(action: Strategy, others: Sequence[Strategy], config: GameConfig) -> float:
    """Reward earned by `action` against the other users' pure actions.

    A transmission succeeds iff nobody else used the same power level.
    """
    if len(others) != config.num_users - 1:
        raise ValueError(
            f"expected {config.num_users - 1} opponents, got {len(others)}"
        )
    if action is Strategy.NO_TRANSMIT:
        return 0.0
    return 0.0 if action in others else config.reward


def payoff(action: Strategy, others: Sequence[Strategy], config: GameConfig) -> float:
    """Reward minus transmit cost for one user in a pure profile."""
    return reward(action, others, config) - config.cost(action)


def bimatrix(config: GameConfig) -> Bimatrix:
    """Payoff-pair table of the two-user game."""
    if config.num_users != 2:
        raise ValueError("the payoff table is defined for 2-user games only")
    rows = tuple(
        tuple(
            (payoff(s, [t], config), payoff(t, [s], config))
            for t in STRATEGY_ORDER
        )
        for s in STRATEGY_ORDER
    )
    return Bimatrix(rows)


def expected_payoff(
    own: Union[Strategy, MixedStrategy],
    others: MixedStrategy,
    config: GameConfig,
) -> float:
    """Expected payoff of `own` when all other users play `others` i.i.d.

    For a pure action the expectation is reward times the probability
    that no opponent picks the same power level, minus the cost; for a
    mixed action it is the convex combination over the support.
    """
    exponent = config.num_users - 1
    if isinstance(own, MixedStrategy):
        return own.high * expected_payoff(
            Strategy.HIGH, others, config
        ) + own.low * expected_payoff(Strategy.LOW, others, config)
    if own is Strategy.NO_TRANSMIT:
        return 0.0
    if own is Strategy.HIGH:
        return config.reward * (1.0 - others.high) ** exponent - config.cost_high
    return config.reward * (1.0 - others.low) ** exponent - config.cost_low


def expected_throughput(profile: MixedStrategy, config: GameConfig) -> float:
    """Mean decoded packets per slot when every user plays `profile`.

    Each power level contributes one packet iff exactly one of the K
    users transmits there.
    """
    k = config.num_users
    a, b = profile.high, profile.low
    return k * (a * (1.0 - a) ** (k - 1) + b * (1.0 - b) ** (k - 1))
