"""Mixed-strategy equilibria in exact arithmetic.

Two routes are provided on purpose: ``mixed_2x2`` does the closed-form
2x2 indifference analysis, ``support_enumeration`` solves exact linear
systems per support pair for games up to 4x4.  On 2x2 games they must
return the same equilibrium set, which the test suite enforces.

Degenerate situations (tied payoffs producing equilibrium components, or
singular indifference systems) are reported as representative points
flagged ``COMPONENT_DEGENERATE`` rather than as full component geometry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ShapeError
from .game_core import (
    NormalFormGame,
    Player,
    StrategyProfile,
    best_responses,
    pure_nash,
)


class EquilibriumKind(Enum):
    PURE_CORNER = "pure_corner"
    INTERIOR_MIXED = "interior_mixed"
    COMPONENT_DEGENERATE = "component_degenerate"


@dataclass(frozen=True)
class MixedProfile:
    row_distribution: tuple[Fraction, ...]
    col_distribution: tuple[Fraction, ...]

    def __post_init__(self):
        for dist in (self.row_distribution, self.col_distribution):
            if sum(dist) != 1:
                raise ValueError(f"distribution {dist} does not sum to 1")
            if any(p < 0 or p > 1 for p in dist):
                raise ValueError(f"distribution {dist} has entries outside [0, 1]")


@dataclass(frozen=True)
class EquilibriumResult:
    kind: EquilibriumKind
    profile: MixedProfile
    row_support: tuple[int, ...]
    col_support: tuple[int, ...]
    degeneracy_note: str | None = None


def _support(dist: tuple[Fraction, ...]) -> tuple[int, ...]:
    return tuple(i for i, p in enumerate(dist) if p > 0)


def _expected_for_rows(game: NormalFormGame, y: tuple[Fraction, ...]):
    m, n = game.shape
    return [
        sum(y[j] * game.payoff_of(Player.ROW, i, j) for j in range(n)) for i in range(m)
    ]


def _expected_for_cols(game: NormalFormGame, x: tuple[Fraction, ...]):
    m, n = game.shape
    return [
        sum(x[i] * game.payoff_of(Player.COL, i, j) for i in range(m)) for j in range(n)
    ]


def _is_equilibrium(
    game: NormalFormGame, x: tuple[Fraction, ...], y: tuple[Fraction, ...]
) -> bool:
    """Exact Nash check: every supported strategy is a best response."""
    row_values = _expected_for_rows(game, y)
    best_row = max(row_values)
    if any(x[i] > 0 and row_values[i] != best_row for i in range(len(x))):
        return False
    col_values = _expected_for_cols(game, x)
    best_col = max(col_values)
    return not any(y[j] > 0 and col_values[j] != best_col for j in range(len(y)))


# ---------------------------------------------------------------------------
# exact linear solving


def _solve_linear(rows, rhs):
    """Gauss-Jordan over Fractions.

    Returns (status, solution) with status in {"unique", "underdetermined",
    "inconsistent"}; the solution sets free variables to 0.
    """
    if not rows:
        return "underdetermined", []
    width = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row_at = 0
    for col in range(width):
        pivot = next((r for r in range(row_at, len(aug)) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        factor = aug[row_at][col]
        aug[row_at] = [v / factor for v in aug[row_at]]
        for r in range(len(aug)):
            if r != row_at and aug[r][col] != 0:
                scale = aug[r][col]
                aug[r] = [v - scale * w for v, w in zip(aug[r], aug[row_at])]
        pivots.append(col)
        row_at += 1
        if row_at == len(aug):
            break
    for r in range(row_at, len(aug)):
        if aug[r][width] != 0:
            return "inconsistent", None
    solution = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        solution[col] = aug[r][width]
    status = "unique" if len(pivots) == width else "underdetermined"
    return status, solution


def _side_solutions(rows, rhs, size):
    """Solutions of one player's indifference system, as candidate mixes.

    Unique systems give one candidate.  Underdetermined ones give the
    vertices of the solution polytope (basic feasible solutions) plus
    their centroid, which serve as component representatives.
    """
    status, solution = _solve_linear(rows, rhs)
    if status == "inconsistent":
        return "inconsistent", []
    if status == "unique":
        return "unique", [tuple(solution)]
    candidates = []
    for k in range(size):
        for zeros in itertools.combinations(range(size), k):
            aug_rows = list(rows)
            aug_rhs = list(rhs)
            for z in zeros:
                unit = [Fraction(0)] * size
                unit[z] = Fraction(1)
                aug_rows.append(unit)
                aug_rhs.append(Fraction(0))
            st, sol = _solve_linear(aug_rows, aug_rhs)
            if st == "unique" and all(v >= 0 for v in sol):
                vertex = tuple(sol)
                if vertex not in candidates:
                    candidates.append(vertex)
    if len(candidates) > 1:
        centroid = tuple(
            sum(v[i] for v in candidates) / len(candidates)
            for i in range(size)
        )
        if centroid not in candidates:
            candidates.append(centroid)
    return "component", candidates


def _col_mix_system(game: NormalFormGame, support_rows, support_cols):
    """Equations a column mixture must satisfy to equalise the given rows."""
    base = support_rows[0]
    rows = []
    rhs = []
    for i in support_rows[1:]:
        rows.append(
            [
                game.payoff_of(Player.ROW, base, j) - game.payoff_of(Player.ROW, i, j)
                for j in support_cols
            ]
        )
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * len(support_cols))
    rhs.append(Fraction(1))
    return rows, rhs


def _row_mix_system(game: NormalFormGame, support_rows, support_cols):
    base = support_cols[0]
    rows = []
    rhs = []
    for j in support_cols[1:]:
        rows.append(
            [
                game.payoff_of(Player.COL, i, base) - game.payoff_of(Player.COL, i, j)
                for i in support_rows
            ]
        )
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * len(support_rows))
    rhs.append(Fraction(1))
    return rows, rhs


def _embed(values, positions, length) -> tuple[Fraction, ...]:
    full = [Fraction(0)] * length
    for value, pos in zip(values, positions):
        full[pos] = value
    return tuple(full)


def _pure_results(game: NormalFormGame) -> list[EquilibriumResult]:
    m, n = game.shape
    results = []
    for profile in pure_nash(game):
        x = tuple(Fraction(1 if i == profile.row_index else 0) for i in range(m))
        y = tuple(Fraction(1 if j == profile.col_index else 0) for j in range(n))
        results.append(
            EquilibriumResult(
                EquilibriumKind.PURE_CORNER,
                MixedProfile(x, y),
                (profile.row_index,),
                (profile.col_index,),
            )
        )
    return results


def _pure_side_components(game: NormalFormGame) -> list[EquilibriumResult]:
    """Components where one player is pure and the other mixes over a tie."""
    m, n = game.shape
    results = []
    for j in range(n):
        tied = best_responses(game, Player.ROW, j)
        if len(tied) > 1:
            x = _embed([Fraction(1, len(tied))] * len(tied), tied, m)
            y = tuple(Fraction(1 if c == j else 0) for c in range(n))
            if _is_equilibrium(game, x, y):
                results.append(
                    EquilibriumResult(
                        EquilibriumKind.COMPONENT_DEGENERATE,
                        MixedProfile(x, y),
                        _support(x),
                        _support(y),
                        degeneracy_note=(
                            f"row player tied against pure column {j}; "
                            "representative point of an equilibrium component"
                        ),
                    )
                )
    for i in range(m):
        tied = best_responses(game, Player.COL, i)
        if len(tied) > 1:
            y = _embed([Fraction(1, len(tied))] * len(tied), tied, n)
            x = tuple(Fraction(1 if r == i else 0) for r in range(m))
            if _is_equilibrium(game, x, y):
                results.append(
                    EquilibriumResult(
                        EquilibriumKind.COMPONENT_DEGENERATE,
                        MixedProfile(x, y),
                        _support(x),
                        _support(y),
                        degeneracy_note=(
                            f"column player tied against pure row {i}; "
                            "representative point of an equilibrium component"
                        ),
                    )
                )
    return results


def _support_pair_results(
    game: NormalFormGame, support_rows, support_cols
) -> list[EquilibriumResult]:
    m, n = game.shape
    y_status, y_solutions = _side_solutions(
        *_col_mix_system(game, support_rows, support_cols), len(support_cols)
    )
    if y_status == "inconsistent":
        return []
    x_status, x_solutions = _side_solutions(
        *_row_mix_system(game, support_rows, support_cols), len(support_rows)
    )
    if x_status == "inconsistent":
        return []
    degenerate = "component" in (x_status, y_status)
    results = []
    for xs in x_solutions:
        for ys in y_solutions:
            if any(v < 0 for v in xs) or any(v < 0 for v in ys):
                continue
            if not degenerate and (0 in xs or 0 in ys):
                continue  # support must be exact in the nondegenerate route
            x = _embed(xs, support_rows, m)
            y = _embed(ys, support_cols, n)
            if not _is_equilibrium(game, x, y):
                continue
            kind = (
                EquilibriumKind.COMPONENT_DEGENERATE
                if degenerate
                else EquilibriumKind.INTERIOR_MIXED
            )
            note = (
                "underdetermined indifference system on supports "
                f"{support_rows}x{support_cols}; representative point"
                if degenerate
                else None
            )
            results.append(
                EquilibriumResult(kind, MixedProfile(x, y), _support(x), _support(y), note)
            )
    return results


def _finalize(candidates: list[EquilibriumResult]) -> tuple[EquilibriumResult, ...]:
    seen = {}
    for result in candidates:
        key = (result.profile.row_distribution, result.profile.col_distribution)
        if key not in seen:
            seen[key] = result
    ordered = sorted(
        seen.values(),
        key=lambda r: (r.profile.row_distribution, r.profile.col_distribution),
        reverse=True,
    )
    return tuple(ordered)


def support_enumeration(game: NormalFormGame) -> tuple[EquilibriumResult, ...]:
    """All equilibria of a game up to 4x4 via equal-size support pairs.

    Every returned point satisfies the exact no-profitable-deviation
    check.  Degenerate support pairs contribute representative points
    flagged as components.
    """
    m, n = game.shape
    if m > 4 or n > 4:
        raise ShapeError(f"support enumeration capped at 4x4, got {m}x{n}")
    candidates = list(_pure_results(game))
    for k in range(2, min(m, n) + 1):
        for support_rows in itertools.combinations(range(m), k):
            for support_cols in itertools.combinations(range(n), k):
                candidates.extend(
                    _support_pair_results(game, support_rows, support_cols)
                )
    candidates.extend(_pure_side_components(game))
    return _finalize(candidates)


# ---------------------------------------------------------------------------
# closed-form 2x2 analysis


def _require_2x2(game: NormalFormGame) -> None:
    if game.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 game, got {game.shape[0]}x{game.shape[1]}")


def _row_indifference(game: NormalFormGame) -> tuple[str, Fraction | None]:
    """Opponent mixture q on column 0 equalising the two rows."""
    d0 = game.payoff_of(Player.ROW, 0, 0) - game.payoff_of(Player.ROW, 1, 0)
    d1 = game.payoff_of(Player.ROW, 0, 1) - game.payoff_of(Player.ROW, 1, 1)
    if d0 == d1:
        return ("always" if d0 == 0 else "never"), None
    return "unique", d1 / (d1 - d0)


def _col_indifference(game: NormalFormGame) -> tuple[str, Fraction | None]:
    e0 = game.payoff_of(Player.COL, 0, 0) - game.payoff_of(Player.COL, 0, 1)
    e1 = game.payoff_of(Player.COL, 1, 0) - game.payoff_of(Player.COL, 1, 1)
    if e0 == e1:
        return ("always" if e0 == 0 else "never"), None
    return "unique", e1 / (e1 - e0)


def mixed_2x2(game: NormalFormGame) -> tuple[EquilibriumResult, ...]:
    """All equilibria of a 2x2 game, sorted by (p, q) descending.

    With a weakly dominant strategy present the analysis collapses to
    corner equilibria (plus tie components); otherwise the interior point
    comes from mutual indifference.
    """
    _require_2x2(game)
    candidates = list(_pure_results(game))

    row_status, q_star = _row_indifference(game)
    col_status, p_star = _col_indifference(game)
    if row_status == "unique" and col_status == "unique":
        if 0 < q_star < 1 and 0 < p_star < 1:
            x = (p_star, 1 - p_star)
            y = (q_star, 1 - q_star)
            if _is_equilibrium(game, x, y):
                candidates.append(
                    EquilibriumResult(
                        EquilibriumKind.INTERIOR_MIXED,
                        MixedProfile(x, y),
                        (0, 1),
                        (0, 1),
                    )
                )
    elif row_status == "always" or col_status == "always":
        candidates.extend(_support_pair_results(game, (0, 1), (0, 1)))

    candidates.extend(_pure_side_components(game))
    return _finalize(candidates)


def indifference_thresholds(
    game: NormalFormGame,
) -> tuple[Fraction | None, Fraction | None]:
    """(q_star, p_star): opponent mixtures equalising each player's strategies.

    q_star is the probability on the first column making the row player
    exactly indifferent, p_star the probability on the first row doing the
    same for the column player.  ``None`` stands in when a weakly dominant
    strategy removes any genuine switching threshold, or when no equaliser
    lies in [0, 1].
    """
    _require_2x2(game)
    from .game_core import DominanceKind, VerdictKind, dominated_strategies

    def threshold(player: Player) -> Fraction | None:
        verdicts = dominated_strategies(game, player, DominanceKind.WEAK)
        if any(v.kind is not VerdictKind.NOT_DOMINATED for v in verdicts.values()):
            return None
        status, value = (
            _row_indifference(game) if player is Player.ROW else _col_indifference(game)
        )
        if status != "unique" or value is None or not 0 <= value <= 1:
            return None
        return value

    return threshold(Player.ROW), threshold(Player.COL)
