"""Command-line front end: solve, optimize, verify, simulate, sweep.

Sweeps emit one CSV row per grid point with a fixed column order and
`.` decimal separators, suitable for regenerating the strategy,
payoff, and anarchy-ratio curves over the reward or the user count.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence, TextIO

from .equilibrium import mixed_ne, pure_nash_equilibria, verify_epsilon_ne, w_star
from .game import GameConfig, MixedStrategy, expected_throughput
from .simulate import Z_95, SimConfig, simulate
from .social import maximize_average_payoff

SWEEP_COLUMNS = [
    "W",
    "K",
    "a_ne",
    "b_ne",
    "p0_ne",
    "regime",
    "ne_payoff",
    "a_opt",
    "b_opt",
    "opt_payoff",
    "poa",
    "analytic_throughput_at_ne",
]

MAX_ENUMERATION_USERS = 12


@dataclass(frozen=True)
class SweepSpec:
    """Grid over the reward (variable "W") or the user count ("K").

    The non-swept parameter and the costs stay fixed across the grid.
    """

    variable: str
    values: tuple[float, ...]
    num_users: int = 2
    reward: float = 10.0
    cost_high: float = 2.0
    cost_low: float = 1.0

    def __post_init__(self) -> None:
        if self.variable not in ("W", "K"):
            raise ValueError(f"variable must be 'W' or 'K', got {self.variable!r}")
        if not self.values:
            raise ValueError("sweep range is empty")
        if self.variable == "K":
            if any(v != int(v) or v < 2 for v in self.values):
                raise ValueError("K values must be integers >= 2")
        elif any(v < 0 for v in self.values):
            raise ValueError("W values must be >= 0")

    @classmethod
    def reward_range(
        cls,
        start: float,
        stop: float,
        step: float,
        num_users: int = 2,
        cost_high: float = 2.0,
        cost_low: float = 1.0,
    ) -> "SweepSpec":
        if step <= 0:
            raise ValueError(f"step must be > 0, got {step}")
        if stop < start:
            raise ValueError("sweep range is empty")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = tuple(start + i * step for i in range(count))
        return cls(
            variable="W",
            values=values,
            num_users=num_users,
            cost_high=cost_high,
            cost_low=cost_low,
        )

    def configs(self) -> Iterable[GameConfig]:
        for value in self.values:
            if self.variable == "W":
                yield GameConfig(
                    self.num_users, value, self.cost_high, self.cost_low
                )
            else:
                yield GameConfig(
                    int(value), self.reward, self.cost_high, self.cost_low
                )


def sweep_row(config: GameConfig) -> dict[str, Any]:
    """Equilibrium and optimum columns for one grid point."""
    ne = mixed_ne(config)
    opt = maximize_average_payoff(config)
    return {
        "W": config.reward,
        "K": config.num_users,
        "a_ne": ne.strategy.high,
        "b_ne": ne.strategy.low,
        "p0_ne": ne.strategy.no_transmit,
        "regime": ne.regime.value,
        "ne_payoff": ne.equilibrium_payoff,
        "a_opt": opt.strategy.high,
        "b_opt": opt.strategy.low,
        "opt_payoff": opt.average_payoff,
        "poa": opt.poa,
        "analytic_throughput_at_ne": expected_throughput(ne.strategy, config),
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_sweep_csv(rows: Iterable[dict[str, Any]], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[col]) for col in SWEEP_COLUMNS])


def _print_pairs(pairs: Sequence[tuple[str, Any]]) -> None:
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        if isinstance(value, float):
            value = f"{value:.6g}"
        print(f"{key:<{width}}  {value}")


def _game_config(args: argparse.Namespace) -> GameConfig:
    return GameConfig(args.k, args.w, args.cost_h, args.cost_l)


def _profile_from_args(args: argparse.Namespace, config: GameConfig) -> MixedStrategy:
    if args.profile == "ne":
        return mixed_ne(config).strategy
    if args.profile == "opt":
        return maximize_average_payoff(config).strategy
    if args.a is None or args.b is None:
        raise ValueError("explicit profile needs --a and --b")
    return MixedStrategy(args.a, args.b)


def cmd_solve(args: argparse.Namespace) -> int:
    config = _game_config(args)
    ne = mixed_ne(config)
    payload = ne.to_dict()
    payload["w_star"] = w_star(config)
    if config.num_users <= MAX_ENUMERATION_USERS:
        payload["pure_ne"] = [
            [s.value for s in profile]
            for profile in pure_nash_equilibria(config)
        ]
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        write_sweep_csv([sweep_row(config)], sys.stdout)
    else:
        a, b = ne.strategy.high, ne.strategy.low
        _print_pairs(
            [
                ("regime", ne.regime.value),
                ("a (high)", a),
                ("b (low)", b),
                ("p0 (silent)", ne.strategy.no_transmit),
                ("U(H)", ne.payoffs[0]),
                ("U(L)", ne.payoffs[1]),
                ("U(0)", ne.payoffs[2]),
                ("equilibrium payoff", ne.equilibrium_payoff),
                ("residual", ne.residual),
                ("W*", payload["w_star"]),
                (
                    "pure NE",
                    ", ".join(
                        "(" + ",".join(s.value for s in p) + ")"
                        for p in pure_nash_equilibria(config)
                    )
                    or "none",
                ),
            ]
        )
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    config = _game_config(args)
    opt = maximize_average_payoff(config)
    if args.format == "json":
        print(json.dumps(opt.to_dict(), indent=2))
    elif args.format == "csv":
        write_sweep_csv([sweep_row(config)], sys.stdout)
    else:
        _print_pairs(
            [
                ("a (high)", opt.strategy.high),
                ("b (low)", opt.strategy.low),
                ("p0 (silent)", opt.strategy.no_transmit),
                ("average payoff", opt.average_payoff),
                ("NE payoff", opt.ne_payoff),
                ("PoA", "undefined" if opt.poa is None else opt.poa),
            ]
        )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    config = _game_config(args)
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise ValueError("--a and --b must be given together")
        strategy = MixedStrategy(args.a, args.b)
    else:
        strategy = mixed_ne(config).strategy
    check = verify_epsilon_ne(strategy, config, args.epsilon)
    if args.format == "json":
        payload = {
            "strategy": {
                "high": strategy.high,
                "low": strategy.low,
                "no_transmit": strategy.no_transmit,
            },
            "payoffs": {
                "H": check.payoffs[0],
                "L": check.payoffs[1],
                "0": check.payoffs[2],
            },
            "support": [s.value for s in check.support],
            "spread": check.spread,
            "advantage": check.advantage,
            "epsilon": check.epsilon,
            "passed": check.passed,
        }
        print(json.dumps(payload, indent=2))
    else:
        _print_pairs(
            [
                ("a (high)", strategy.high),
                ("b (low)", strategy.low),
                ("U(H)", check.payoffs[0]),
                ("U(L)", check.payoffs[1]),
                ("U(0)", check.payoffs[2]),
                ("support", ",".join(s.value for s in check.support)),
                ("spread", check.spread),
                ("advantage", check.advantage),
                ("epsilon", check.epsilon),
                ("passed", check.passed),
            ]
        )
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _game_config(args)
    strategy = _profile_from_args(args, config)
    report = simulate(
        SimConfig(
            game=config,
            profiles=strategy,
            slots=args.slots,
            seed=args.seed,
            replications=args.replications,
        )
    )
    from .game import expected_payoff  # local import avoids name clash

    analytic_tp = expected_throughput(strategy, config)
    analytic_pay = expected_payoff(strategy, strategy, config)
    tp_sigma = report.throughput_ci95 / Z_95
    pay_sigma = report.payoff_ci95 / Z_95
    tp_ok = abs(report.mean_throughput - analytic_tp) <= 3 * tp_sigma + 1e-12
    pay_ok = abs(report.mean_payoff - analytic_pay) <= 3 * pay_sigma + 1e-12
    if args.format == "json":
        payload = report.to_dict()
        payload["profile"] = {
            "high": strategy.high,
            "low": strategy.low,
            "no_transmit": strategy.no_transmit,
        }
        payload["analytic_throughput"] = analytic_tp
        payload["analytic_payoff"] = analytic_pay
        payload["throughput_within_3_sigma"] = tp_ok
        payload["payoff_within_3_sigma"] = pay_ok
        print(json.dumps(payload, indent=2))
    else:
        _print_pairs(
            [
                ("profile (a, b)", f"({strategy.high:.6g}, {strategy.low:.6g})"),
                ("slots x replications", f"{args.slots} x {args.replications}"),
                ("seed", report.seed_used),
                ("throughput", report.mean_throughput),
                ("throughput ci95", report.throughput_ci95),
                ("analytic throughput", analytic_tp),
                ("throughput within 3 sigma", tp_ok),
                ("H-level success rate", report.per_level_success[0]),
                ("L-level success rate", report.per_level_success[1]),
                ("collision rate", report.collision_rate),
                ("mean payoff", report.mean_payoff),
                ("payoff ci95", report.payoff_ci95),
                ("analytic payoff", analytic_pay),
                ("payoff within 3 sigma", pay_ok),
            ]
        )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.variable == "W":
        spec = SweepSpec.reward_range(
            args.start,
            args.stop,
            args.step,
            num_users=args.k,
            cost_high=args.cost_h,
            cost_low=args.cost_l,
        )
    else:
        values = (
            _parse_int_list(args.k_values)
            if args.k_values
            else list(range(2, 21))
        )
        spec = SweepSpec(
            variable="K",
            values=tuple(float(v) for v in values),
            reward=args.w,
            cost_high=args.cost_h,
            cost_low=args.cost_l,
        )
    rows = [sweep_row(config) for config in spec.configs()]
    if args.format == "json":
        text = json.dumps(rows, indent=2)
        if args.out:
            with open(args.out, "w") as handle:
                handle.write(text + "\n")
        else:
            print(text)
        return 0
    if args.out:
        with open(args.out, "w", newline="") as handle:
            write_sweep_csv(rows, handle)
    else:
        write_sweep_csv(rows, sys.stdout)
    return 0


def _parse_int_list(text: str) -> list[int]:
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..", 1)
            values.extend(range(int(lo), int(hi) + 1))
        elif token:
            values.append(int(token))
    return values


def _count(text: str) -> int:
    """Integer flag that also accepts scientific notation like 1e6."""
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
    return int(value)


_CONFIG_TYPES = {
    "w": float,
    "k": int,
    "cost_h": float,
    "cost_l": float,
    "slots": _count,
    "seed": int,
    "replications": int,
    "format": str,
    "out": str,
    "epsilon": float,
    "profile": str,
    "a": float,
    "b": float,
    "variable": str.upper,
    "start": float,
    "stop": float,
    "step": float,
    "k_values": str,
}


def load_config_file(path: str) -> dict[str, Any]:
    """Flat key=value file mirroring the flags; '#' starts a comment."""
    defaults: dict[str, Any] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lower().replace("-", "_")
            if not sep or key not in _CONFIG_TYPES:
                raise ValueError(f"{path}:{lineno}: bad config line {raw.strip()!r}")
            defaults[key] = _CONFIG_TYPES[key](value.strip())
    return defaults


def _add_game_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--w", type=float, default=5.0, help="success reward")
    parser.add_argument("--k", type=int, default=2, help="number of users")
    parser.add_argument(
        "--cost-h", dest="cost_h", type=float, default=2.0,
        help="high-power transmit cost",
    )
    parser.add_argument(
        "--cost-l", dest="cost_l", type=float, default=1.0,
        help="low-power transmit cost",
    )
    parser.add_argument(
        "--config", help="key=value file with flag defaults; flags win"
    )


def _add_format_flag(parser: argparse.ArgumentParser, default: str = "table",
                     choices: tuple[str, ...] = ("table", "json", "csv")) -> None:
    parser.add_argument("--format", choices=choices, default=default)


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="noma-aloha",
        description="Equilibria, social optima, and Monte Carlo simulation "
        "of the two-power-level random-access game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    children = []

    p_solve = sub.add_parser("solve", help="mixed and pure Nash equilibria")
    _add_game_flags(p_solve)
    _add_format_flag(p_solve)
    p_solve.set_defaults(func=cmd_solve)
    children.append(p_solve)

    p_opt = sub.add_parser("optimize", help="socially optimal strategy and PoA")
    _add_game_flags(p_opt)
    _add_format_flag(p_opt)
    p_opt.set_defaults(func=cmd_optimize)
    children.append(p_opt)

    p_verify = sub.add_parser("verify", help="indifference check of a profile")
    _add_game_flags(p_verify)
    p_verify.add_argument("--a", type=float, help="high-power probability")
    p_verify.add_argument("--b", type=float, help="low-power probability")
    p_verify.add_argument("--epsilon", type=float, default=1e-9)
    _add_format_flag(p_verify, choices=("table", "json"))
    p_verify.set_defaults(func=cmd_verify)
    children.append(p_verify)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo run")
    _add_game_flags(p_sim)
    p_sim.add_argument(
        "--profile", choices=("ne", "opt", "explicit"), default="ne"
    )
    p_sim.add_argument("--a", type=float, help="high-power probability")
    p_sim.add_argument("--b", type=float, help="low-power probability")
    p_sim.add_argument("--slots", type=_count, default=100_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--replications", type=_count, default=30)
    _add_format_flag(p_sim, choices=("table", "json"))
    p_sim.set_defaults(func=cmd_simulate)
    children.append(p_sim)

    p_sweep = sub.add_parser("sweep", help="CSV grid over W or K")
    _add_game_flags(p_sweep)
    p_sweep.add_argument(
        "--variable", type=lambda s: s.upper(), choices=("W", "K"), default="W"
    )
    p_sweep.add_argument("--start", type=float, default=0.0)
    p_sweep.add_argument("--stop", type=float, default=10.0)
    p_sweep.add_argument("--step", type=float, default=0.1)
    p_sweep.add_argument(
        "--k-values", dest="k_values",
        help="comma list or lo..hi range of user counts (K sweep)",
    )
    p_sweep.add_argument("--out", help="output path (default: stdout)")
    _add_format_flag(p_sweep, default="csv", choices=("csv", "json"))
    p_sweep.set_defaults(func=cmd_sweep)
    children.append(p_sweep)

    return parser, children


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, children = build_parser()
    config_path = _peek_config_path(argv)
    if config_path:
        try:
            defaults = load_config_file(config_path)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for child in children:
            child.set_defaults(**defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _peek_config_path(argv: Sequence[str]) -> Optional[str]:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
