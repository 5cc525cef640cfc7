"""Best-response dynamics and market-share dynamics.

Best-response play is turn based and exact: the mover switches only on a
strict improvement (staying put on ties), which prevents spurious cycles
through indifferent moves.  Market shares evolve under a discrete
replicator rule with an optional herding bonus proportional to a model's
current share; share arithmetic is floating point with renormalisation,
unlike the exact solver modules, because replicator denominators grow
without bound.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from enum import Enum
from typing import IO, NamedTuple, Sequence

from .errors import DomainError, IndexOutOfBounds, ShapeError
from .game_core import (
    NormalFormGame,
    Player,
    StrategyProfile,
    best_responses,
)
from .models import HabermannParams

SIMPLEX_TOLERANCE = 1e-12
CONVERGENCE_THRESHOLD = 0.99


class BrRule(Enum):
    ALTERNATING_ROW_FIRST = "alternating_row_first"
    ALTERNATING_COL_FIRST = "alternating_col_first"


@dataclass(frozen=True)
class FixedPoint:
    profile: StrategyProfile


@dataclass(frozen=True)
class Cycle:
    period: int
    first_index: int


@dataclass(frozen=True)
class Truncated:
    pass


Terminal = FixedPoint | Cycle | Truncated


@dataclass(frozen=True)
class BrDynamicsTrace:
    path: tuple[StrategyProfile, ...]
    terminal: Terminal


def br_dynamics(
    game: NormalFormGame,
    start: StrategyProfile,
    rule: BrRule = BrRule.ALTERNATING_ROW_FIRST,
    max_steps: int = 100,
) -> BrDynamicsTrace:
    """Alternating best-response play from a starting profile.

    Each half-step one player moves to its best response against the
    current opponent strategy (lowest index on ties, staying put when the
    current strategy is already best).  The path records profiles after
    every actual move.  A full round without change is a fixed point; a
    revisited (profile, mover) state after at least one move is a cycle,
    whose period is minimal because play is deterministic.
    """
    if max_steps < 1:
        raise DomainError("max_steps must be at least 1")
    m, n = game.shape
    start = StrategyProfile(*start)
    if not (0 <= start.row_index < m and 0 <= start.col_index < n):
        raise IndexOutOfBounds(f"start {tuple(start)} outside {m}x{n} game")

    turn = Player.ROW if rule is BrRule.ALTERNATING_ROW_FIRST else Player.COL
    profile = start
    path = [start]
    seen = {(profile, turn): 0}
    consecutive_stays = 0

    for _ in range(max_steps):
        if turn is Player.ROW:
            responses = best_responses(game, turn, profile.col_index)
            current = profile.row_index
        else:
            responses = best_responses(game, turn, profile.row_index)
            current = profile.col_index
        target = current if current in responses else responses[0]

        if target == current:
            consecutive_stays += 1
            turn = turn.other
            if consecutive_stays >= 2:
                return BrDynamicsTrace(tuple(path), FixedPoint(profile))
            continue

        consecutive_stays = 0
        if turn is Player.ROW:
            profile = StrategyProfile(target, profile.col_index)
        else:
            profile = StrategyProfile(profile.row_index, target)
        path.append(profile)
        turn = turn.other
        state = (profile, turn)
        if state in seen:
            first = seen[state]
            return BrDynamicsTrace(
                tuple(path), Cycle(period=len(path) - 1 - first, first_index=first)
            )
        seen[state] = len(path) - 1

    return BrDynamicsTrace(tuple(path), Truncated())


class CycleConditions(NamedTuple):
    """The three strict-improvement inequalities behind the period-4 loop.

    The fourth deviation of the loop (publisher abandoning the closed
    model for the high-profit one) holds for every admissible parameter
    set, so three booleans characterise the cycle.
    """

    author_quits_oa: bool  # r + L/2 > tau
    author_resumes_oa: bool  # G + P + tau > r + L
    publisher_rejoins_oa: bool  # G + I - L/2 > 0


def habermann_cycle_conditions(params: HabermannParams) -> CycleConditions:
    """All three true exactly when play from (s1, p1) cycles with period 4."""
    return CycleConditions(
        author_quits_oa=params.r + params.L / 2 > params.tau,
        author_resumes_oa=params.G + params.P + params.tau > params.r + params.L,
        publisher_rejoins_oa=params.G + params.I - params.L / 2 > 0,
    )


# ---------------------------------------------------------------------------
# market-share dynamics

MODEL_NAMES = ("OA", "C", "H")


@dataclass(frozen=True)
class ShareState:
    x_oa: float
    x_c: float
    x_h: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x_oa, self.x_c, self.x_h)


@dataclass(frozen=True)
class ConvergenceStats:
    converged_to: int | None
    time_to_threshold: int | None
    max_slope: float


@dataclass(frozen=True)
class ShareTrajectory:
    states: tuple[ShareState, ...]
    stats: ConvergenceStats


def convergence_stats(
    trajectory: "ShareTrajectory | Sequence[ShareState]",
    threshold: float = CONVERGENCE_THRESHOLD,
) -> ConvergenceStats:
    """Winning model, first step reaching the threshold, and max one-step gain.

    The slope is measured on the share of the final leading model, which
    operationalises the speed-of-convergence coefficient.
    """
    if not 0.5 < threshold <= 1:
        raise DomainError("threshold must lie in (0.5, 1]")
    states = trajectory.states if isinstance(trajectory, ShareTrajectory) else tuple(trajectory)
    if not states:
        raise DomainError("empty trajectory")
    final = states[-1].as_tuple()
    leader = max(range(3), key=lambda i: (final[i], -i))
    series = [s.as_tuple()[leader] for s in states]
    increments = [b - a for a, b in zip(series, series[1:])]
    max_slope = max(increments, default=0.0)
    if final[leader] >= threshold:
        time_to = next(i for i, v in enumerate(series) if v >= threshold)
        return ConvergenceStats(leader, time_to, max(0.0, max_slope))
    return ConvergenceStats(None, None, max(0.0, max_slope))


def replicator_simulate(
    game: NormalFormGame,
    init: ShareState,
    herd_weight: float = 0.0,
    payoff_shift: float = 0.0,
    steps: int = 500,
    threshold: float = CONVERGENCE_THRESHOLD,
) -> ShareTrajectory:
    """Discrete replicator with herding over the row player's 3x3 payoffs.

    Fitness of model i is its expected row payoff against the current
    population mix; the update weighs shares by fitness plus the shift
    plus ``herd_weight`` times the model's own share.  Adjusted fitnesses
    must stay positive (checked every step).  Shares are renormalised each
    step and must stay within 1e-12 of summing to 1.
    """
    if game.shape != (3, 3):
        raise ShapeError(f"population dynamics needs a 3x3 game, got {game.shape}")
    if herd_weight < 0:
        raise DomainError("herd weight must be nonnegative")
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    shares = list(init.as_tuple())
    if any(s < 0 for s in shares) or abs(sum(shares) - 1.0) > 1e-9:
        raise DomainError(f"initial shares {shares} are off the simplex")
    total = sum(shares)
    shares = [s / total for s in shares]

    payoff = [
        [float(game.payoff_of(Player.ROW, i, j)) for j in range(3)] for i in range(3)
    ]
    states = [ShareState(*shares)]
    for _ in range(steps):
        fitness = [
            sum(payoff[i][j] * shares[j] for j in range(3)) for i in range(3)
        ]
        adjusted = [
            fitness[i] + payoff_shift + herd_weight * shares[i] for i in range(3)
        ]
        if any(g <= 0 for g in adjusted):
            raise DomainError(
                f"adjusted fitness not positive ({adjusted}); raise the payoff shift"
            )
        mean = sum(shares[i] * adjusted[i] for i in range(3))
        shares = [shares[i] * adjusted[i] / mean for i in range(3)]
        total = sum(shares)
        if abs(total - 1.0) > SIMPLEX_TOLERANCE:
            shares = [s / total for s in shares]
        states.append(ShareState(*shares))

    stats = convergence_stats(states, threshold)
    return ShareTrajectory(tuple(states), stats)


def write_trajectory(trajectory: ShareTrajectory, sink: IO[str] | str) -> None:
    """Delimited export, one line per step: step,x_oa,x_c,x_h."""
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as handle:
            write_trajectory(trajectory, handle)
        return
    sink.write("step,x_oa,x_c,x_h\n")
    for step, state in enumerate(trajectory.states):
        sink.write(
            f"{step},{state.x_oa:.12g},{state.x_c:.12g},{state.x_h:.12g}\n"
        )


def format_trajectory(trajectory: ShareTrajectory) -> str:
    buffer = io.StringIO()
    write_trajectory(trajectory, buffer)
    return buffer.getvalue()
