"""Exact 2-player normal-form games and the baseline solution concepts.

Payoffs are ``fractions.Fraction`` throughout and every comparison (best
response, dominance, Pareto) is exact.  Ties therefore behave as genuine
ties, which matters here: several of the publishing-market arguments hinge
on payoffs that are exactly equal, and floats would silently break them.

All values are immutable and all operations are pure functions, so the
module is safe to use from multiple threads without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    IndexOutOfBounds,
)

Payoff = Fraction


class Player(Enum):
    ROW = "row"
    COL = "col"

    @property
    def other(self) -> "Player":
        return Player.COL if self is Player.ROW else Player.ROW


class DominanceKind(Enum):
    STRICT = "strict"
    WEAK = "weak"


class VerdictKind(Enum):
    STRICTLY_DOMINATED = "strictly_dominated"
    WEAKLY_DOMINATED = "weakly_dominated"
    NOT_DOMINATED = "not_dominated"


class PlayerOrder(Enum):
    """Whose eliminations take precedence during iterated elimination.

    ROW_FIRST and COL_FIRST re-check the preferred player before every
    step; ALTERNATING takes strict turns (row first), skipping a player
    that currently has nothing dominated.
    """

    ROW_FIRST = "row_first"
    COL_FIRST = "col_first"
    ALTERNATING = "alternating"


class StrategyProfile(NamedTuple):
    row_index: int
    col_index: int


@dataclass(frozen=True)
class DominanceVerdict:
    kind: VerdictKind
    dominator: int | None = None


@dataclass(frozen=True)
class IedsPolicy:
    """Elimination policy: dominance kind plus the player order.

    One strategy is removed per step.  When several strategies are
    dominated the lowest index goes first, and the recorded dominator is
    the lowest-index strategy that dominates it.
    """

    kind: DominanceKind = DominanceKind.WEAK
    player_order: PlayerOrder = PlayerOrder.ROW_FIRST


@dataclass(frozen=True)
class EliminationStep:
    round: int
    player: Player
    removed: str
    dominator: str
    kind: DominanceKind


@dataclass(frozen=True)
class EliminationTrace:
    steps: tuple[EliminationStep, ...]
    terminal_game: "NormalFormGame"


@dataclass(frozen=True)
class ParetoStatus:
    """Either optimal (empty ``dominated_by``) or the profiles beating it."""

    dominated_by: tuple[StrategyProfile, ...]

    @property
    def optimal(self) -> bool:
        return not self.dominated_by


def as_payoff(value) -> Fraction:
    """Coerce an exact value (int, Fraction or 'p/q' string) to Fraction.

    Floats are rejected: rounding would corrupt the tie semantics this
    module relies on.
    """
    if isinstance(value, (bool, float)):
        raise TypeError(f"payoffs must be exact rationals, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class NormalFormGame:
    row_player_label: str
    col_player_label: str
    row_strategies: tuple[str, ...]
    col_strategies: tuple[str, ...]
    payoffs: tuple[tuple[tuple[Fraction, Fraction], ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_strategies), len(self.col_strategies)

    def strategies(self, player: Player) -> tuple[str, ...]:
        return self.row_strategies if player is Player.ROW else self.col_strategies

    def payoff_pair(self, row: int, col: int) -> tuple[Fraction, Fraction]:
        m, n = self.shape
        if not (0 <= row < m and 0 <= col < n):
            raise IndexOutOfBounds(f"profile ({row}, {col}) outside {m}x{n} game")
        return self.payoffs[row][col]

    def payoff_of(self, player: Player, row: int, col: int) -> Fraction:
        pair = self.payoff_pair(row, col)
        return pair[0] if player is Player.ROW else pair[1]

    def profiles(self) -> Iterable[StrategyProfile]:
        m, n = self.shape
        return (StrategyProfile(r, c) for r in range(m) for c in range(n))

    def profile_label(self, profile: StrategyProfile) -> str:
        return (
            f"({self.row_strategies[profile.row_index]}, "
            f"{self.col_strategies[profile.col_index]})"
        )


def make_game(
    row_label: str,
    col_label: str,
    row_strategies: Sequence[str],
    col_strategies: Sequence[str],
    payoff_matrix: Sequence[Sequence[tuple]],
) -> NormalFormGame:
    """Validate and freeze a 2-player game.

    ``payoff_matrix[r][c]`` is the pair (row payoff, col payoff); entries
    may be ints, Fractions or 'p/q' strings.
    """
    rows = tuple(str(s) for s in row_strategies)
    cols = tuple(str(s) for s in col_strategies)
    if not rows or not cols:
        raise DimensionMismatch("each player needs at least one strategy")
    if len(set(rows)) != len(rows):
        raise DuplicateLabel(f"duplicate row strategy label in {rows}")
    if len(set(cols)) != len(cols):
        raise DuplicateLabel(f"duplicate column strategy label in {cols}")
    if len(payoff_matrix) != len(rows):
        raise DimensionMismatch(
            f"expected {len(rows)} payoff rows, got {len(payoff_matrix)}"
        )
    matrix = []
    for r, row in enumerate(payoff_matrix):
        if len(row) != len(cols):
            raise DimensionMismatch(
                f"payoff row {r} has {len(row)} cells, expected {len(cols)}"
            )
        cells = []
        for cell in row:
            if len(cell) != 2:
                raise DimensionMismatch(f"payoff cell {cell!r} is not a pair")
            cells.append((as_payoff(cell[0]), as_payoff(cell[1])))
        matrix.append(tuple(cells))
    return NormalFormGame(str(row_label), str(col_label), rows, cols, tuple(matrix))


def best_responses(
    game: NormalFormGame, player: Player, opposing_strategy_index: int
) -> tuple[int, ...]:
    """Argmax set of ``player`` against a fixed opposing pure strategy.

    Ties are all included; the result is sorted ascending and never empty.
    """
    m, n = game.shape
    own_count, opp_count = (m, n) if player is Player.ROW else (n, m)
    if not 0 <= opposing_strategy_index < opp_count:
        raise IndexOutOfBounds(
            f"opposing index {opposing_strategy_index} outside range {opp_count}"
        )
    if player is Player.ROW:
        values = [game.payoff_of(player, i, opposing_strategy_index) for i in range(own_count)]
    else:
        values = [game.payoff_of(player, opposing_strategy_index, j) for j in range(own_count)]
    best = max(values)
    return tuple(i for i, v in enumerate(values) if v == best)


def pure_nash(game: NormalFormGame) -> tuple[StrategyProfile, ...]:
    """All mutual-best-response profiles, sorted lexicographically.

    Weak ties count: a profile is kept whenever neither player can
    strictly improve by a unilateral pure deviation.
    """
    equilibria = []
    for profile in game.profiles():
        r, c = profile
        if r in best_responses(game, Player.ROW, c) and c in best_responses(
            game, Player.COL, r
        ):
            equilibria.append(profile)
    return tuple(sorted(equilibria))


def _dominates(
    game: NormalFormGame, player: Player, a: int, b: int, kind: DominanceKind
) -> bool:
    """Does strategy ``a`` dominate strategy ``b`` for ``player``?"""
    opp_count = game.shape[1] if player is Player.ROW else game.shape[0]
    strict_somewhere = False
    for opp in range(opp_count):
        if player is Player.ROW:
            va, vb = game.payoff_of(player, a, opp), game.payoff_of(player, b, opp)
        else:
            va, vb = game.payoff_of(player, opp, a), game.payoff_of(player, opp, b)
        if va < vb:
            return False
        if va > vb:
            strict_somewhere = True
        elif kind is DominanceKind.STRICT:
            return False
    return strict_somewhere


def dominated_strategies(
    game: NormalFormGame, player: Player, kind: DominanceKind
) -> dict[int, DominanceVerdict]:
    """Verdict for every strategy of ``player`` under the given kind.

    The recorded dominator is the lowest-index strategy that dominates.
    """
    count = game.shape[0] if player is Player.ROW else game.shape[1]
    verdicts: dict[int, DominanceVerdict] = {}
    for b in range(count):
        dominator = None
        for a in range(count):
            if a != b and _dominates(game, player, a, b, kind):
                dominator = a
                break
        if dominator is None:
            verdicts[b] = DominanceVerdict(VerdictKind.NOT_DOMINATED)
        elif kind is DominanceKind.STRICT:
            verdicts[b] = DominanceVerdict(VerdictKind.STRICTLY_DOMINATED, dominator)
        else:
            verdicts[b] = DominanceVerdict(VerdictKind.WEAKLY_DOMINATED, dominator)
    return verdicts


def _remove_strategy(game: NormalFormGame, player: Player, index: int) -> NormalFormGame:
    if player is Player.ROW:
        rows = tuple(s for i, s in enumerate(game.row_strategies) if i != index)
        payoffs = tuple(row for i, row in enumerate(game.payoffs) if i != index)
        return NormalFormGame(
            game.row_player_label, game.col_player_label, rows, game.col_strategies, payoffs
        )
    cols = tuple(s for j, s in enumerate(game.col_strategies) if j != index)
    payoffs = tuple(
        tuple(cell for j, cell in enumerate(row) if j != index) for row in game.payoffs
    )
    return NormalFormGame(
        game.row_player_label, game.col_player_label, game.row_strategies, cols, payoffs
    )


def _first_elimination(
    game: NormalFormGame, player: Player, kind: DominanceKind
) -> tuple[int, int] | None:
    verdicts = dominated_strategies(game, player, kind)
    for index in sorted(verdicts):
        verdict = verdicts[index]
        if verdict.kind is not VerdictKind.NOT_DOMINATED:
            return index, verdict.dominator
    return None


def ieds(
    game: NormalFormGame, policy: IedsPolicy = IedsPolicy()
) -> tuple[NormalFormGame, EliminationTrace]:
    """Iterated elimination of dominated strategies, one removal per step.

    ROW_FIRST / COL_FIRST give the preferred player priority before every
    step (so fresh dominances for the preferred player are taken first);
    ALTERNATING strictly alternates turns starting with the row player and
    skips a player with nothing dominated.  Stops when neither player has
    a dominated strategy.  The trace records every removal by label.
    """
    current = game
    steps: list[EliminationStep] = []
    round_no = 0

    if policy.player_order is PlayerOrder.ALTERNATING:
        turn = Player.ROW
        idle = 0
        while idle < 2:
            found = _first_elimination(current, turn, policy.kind)
            if found is None:
                idle += 1
            else:
                idle = 0
                index, dominator = found
                labels = current.strategies(turn)
                round_no += 1
                steps.append(
                    EliminationStep(
                        round_no, turn, labels[index], labels[dominator], policy.kind
                    )
                )
                current = _remove_strategy(current, turn, index)
            turn = turn.other
    else:
        if policy.player_order is PlayerOrder.ROW_FIRST:
            precedence = (Player.ROW, Player.COL)
        else:
            precedence = (Player.COL, Player.ROW)
        while True:
            step = None
            for player in precedence:
                found = _first_elimination(current, player, policy.kind)
                if found is not None:
                    step = (player, *found)
                    break
            if step is None:
                break
            player, index, dominator = step
            labels = current.strategies(player)
            round_no += 1
            steps.append(
                EliminationStep(
                    round_no, player, labels[index], labels[dominator], policy.kind
                )
            )
            current = _remove_strategy(current, player, index)

    return current, EliminationTrace(tuple(steps), current)


def pareto_status(game: NormalFormGame, profile: StrategyProfile) -> ParetoStatus:
    """Profiles weakly better for both players and strictly for one."""
    base = game.payoff_pair(profile.row_index, profile.col_index)
    dominating = []
    for other in game.profiles():
        if other == tuple(profile):
            continue
        pair = game.payoff_pair(other.row_index, other.col_index)
        if (
            pair[0] >= base[0]
            and pair[1] >= base[1]
            and (pair[0] > base[0] or pair[1] > base[1])
        ):
            dominating.append(other)
    return ParetoStatus(tuple(sorted(dominating)))
