"""Seeded slotted-channel Monte Carlo for the transmission game.

Every slot each user independently draws an action from its mixed
strategy; a power level delivers a packet iff exactly one user chose
it. Replications get independent, pre-assigned RNG streams spawned
from the root seed, so results are reproducible and independent of
any execution ordering; confidence intervals use the normal
approximation over replication means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np

from .game import GameConfig, MixedStrategy, expected_payoff

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: game, per-user profiles, size and seeding.

    ``profiles`` is either a single mixed strategy shared by all users
    or one strategy per user.
    """

    game: GameConfig
    profiles: Union[MixedStrategy, Sequence[MixedStrategy]]
    slots: int
    seed: int
    replications: int = 30

    def __post_init__(self) -> None:
        if self.slots < 1:
            raise ValueError(f"slots must be >= 1, got {self.slots}")
        if self.replications < 1:
            raise ValueError(
                f"replications must be >= 1, got {self.replications}"
            )
        if isinstance(self.profiles, MixedStrategy):
            profiles = (self.profiles,) * self.game.num_users
        else:
            profiles = tuple(self.profiles)
            if len(profiles) == 1:
                profiles = profiles * self.game.num_users
            elif len(profiles) != self.game.num_users:
                raise ValueError(
                    f"need 1 or {self.game.num_users} profiles, "
                    f"got {len(profiles)}"
                )
        object.__setattr__(self, "profiles", profiles)


@dataclass(frozen=True)
class SimReport:
    """Aggregated estimates with 95% half-widths over replications."""

    mean_throughput: float
    throughput_ci95: float
    per_level_success: tuple[float, float]
    collision_rate: float
    mean_payoff_per_user: tuple[float, ...]
    mean_payoff: float
    payoff_ci95: float
    seed_used: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "mean_throughput": self.mean_throughput,
            "throughput_ci95": self.throughput_ci95,
            "per_level_success": list(self.per_level_success),
            "collision_rate": self.collision_rate,
            "mean_payoff_per_user": list(self.mean_payoff_per_user),
            "mean_payoff": self.mean_payoff,
            "payoff_ci95": self.payoff_ci95,
            "seed_used": self.seed_used,
        }


@dataclass(frozen=True)
class PayoffCheck:
    """Simulated vs. analytic expected payoff at 3-sigma tolerance."""

    simulated: float
    analytic: float
    gap: float
    sigma: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "simulated": self.simulated,
            "analytic": self.analytic,
            "gap": self.gap,
            "sigma": self.sigma,
            "passed": self.passed,
        }


def _run_replication(
    rng: np.random.Generator,
    game: GameConfig,
    highs: np.ndarray,
    cums: np.ndarray,
    slots: int,
) -> tuple[float, float, float, float, np.ndarray]:
    """One replication; returns (throughput, high rate, low rate,
    collision rate, per-user mean payoff)."""
    draws = rng.random((slots, game.num_users))
    is_high = draws < highs
    is_low = ~is_high & (draws < cums)
    n_high = is_high.sum(axis=1)
    n_low = is_low.sum(axis=1)
    high_ok = n_high == 1
    low_ok = n_low == 1
    decoded = is_high & high_ok[:, None] | is_low & low_ok[:, None]
    payoff = (
        game.reward * decoded
        - game.cost_high * is_high
        - game.cost_low * is_low
    )
    # Bool + bool would OR; count decoded packets per slot as integers.
    throughput = float(np.mean(high_ok.astype(np.float64) + low_ok))
    collisions = float(np.mean((n_high >= 2) | (n_low >= 2)))
    return (
        throughput,
        float(np.mean(high_ok)),
        float(np.mean(low_ok)),
        collisions,
        payoff.mean(axis=0),
    )


def _half_width(values: np.ndarray) -> float:
    if values.shape[0] < 2:
        return 0.0
    return float(Z_95 * values.std(ddof=1) / np.sqrt(values.shape[0]))


def simulate(config: SimConfig) -> SimReport:
    """Run all replications and aggregate the estimates."""
    game = config.game
    highs = np.array([p.high for p in config.profiles])
    cums = highs + np.array([p.low for p in config.profiles])
    streams = np.random.SeedSequence(config.seed).spawn(config.replications)

    results = [
        _run_replication(
            np.random.default_rng(stream), game, highs, cums, config.slots
        )
        for stream in streams
    ]
    throughputs = np.array([r[0] for r in results])
    high_rates = np.array([r[1] for r in results])
    low_rates = np.array([r[2] for r in results])
    collision_rates = np.array([r[3] for r in results])
    payoffs = np.stack([r[4] for r in results])  # (replications, users)

    pooled = payoffs.mean(axis=1)
    return SimReport(
        mean_throughput=float(throughputs.mean()),
        throughput_ci95=_half_width(throughputs),
        per_level_success=(float(high_rates.mean()), float(low_rates.mean())),
        collision_rate=float(collision_rates.mean()),
        mean_payoff_per_user=tuple(float(x) for x in payoffs.mean(axis=0)),
        mean_payoff=float(pooled.mean()),
        payoff_ci95=_half_width(pooled),
        seed_used=config.seed,
    )


def empirical_payoff_check(
    strategy: MixedStrategy,
    game: GameConfig,
    slots: int,
    seed: int,
    replications: int = 30,
) -> PayoffCheck:
    """Compare the simulated mean payoff of a symmetric profile against
    the exact expectation; passes within three standard errors."""
    if slots < 10_000:
        raise ValueError(f"need at least 10000 slots, got {slots}")
    report = simulate(
        SimConfig(
            game=game,
            profiles=strategy,
            slots=slots,
            seed=seed,
            replications=replications,
        )
    )
    analytic = expected_payoff(strategy, strategy, game)
    sigma = report.payoff_ci95 / Z_95
    gap = abs(report.mean_payoff - analytic)
    return PayoffCheck(
        simulated=report.mean_payoff,
        analytic=analytic,
        gap=gap,
        sigma=sigma,
        passed=gap <= 3.0 * sigma + 1e-12,
    )
