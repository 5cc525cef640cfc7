"""Shared fixtures and independent oracles.

The oracle functions here deliberately re-implement the solution concepts
by brute force, without touching the library's internals, so the tests
check the package against something it cannot share code with.
"""

from fractions import Fraction

import pytest

from oagames import models
from oagames.game_core import Player, StrategyProfile, make_game


# ---------------------------------------------------------------------------
# brute-force oracles


def oracle_best_responses(game, player, opposing):
    if player is Player.ROW:
        values = [game.payoffs[i][opposing][0] for i in range(game.shape[0])]
    else:
        values = [game.payoffs[opposing][j][1] for j in range(game.shape[1])]
    top = max(values)
    return tuple(i for i, v in enumerate(values) if v == top)


def oracle_pure_nash(game):
    m, n = game.shape
    out = []
    for r in range(m):
        for c in range(n):
            a, b = game.payoffs[r][c]
            if any(game.payoffs[i][c][0] > a for i in range(m)):
                continue
            if any(game.payoffs[r][j][1] > b for j in range(n)):
                continue
            out.append(StrategyProfile(r, c))
    return tuple(sorted(out))


def oracle_dominated(game, player, strict):
    """Indices dominated by some other strategy, with their dominators."""
    m, n = game.shape
    count = m if player is Player.ROW else n

    def payoff(own, opp):
        return (
            game.payoffs[own][opp][0] if player is Player.ROW else game.payoffs[opp][own][1]
        )

    opp_count = n if player is Player.ROW else m
    result = {}
    for b in range(count):
        for a in range(count):
            if a == b:
                continue
            diffs = [payoff(a, o) - payoff(b, o) for o in range(opp_count)]
            if strict and all(d > 0 for d in diffs):
                result.setdefault(b, a)
            if not strict and all(d >= 0 for d in diffs) and any(d > 0 for d in diffs):
                result.setdefault(b, a)
    return result


def oracle_pareto_dominators(game, profile):
    base = game.payoffs[profile[0]][profile[1]]
    out = []
    for r in range(game.shape[0]):
        for c in range(game.shape[1]):
            if (r, c) == tuple(profile):
                continue
            pair = game.payoffs[r][c]
            if pair[0] >= base[0] and pair[1] >= base[1] and pair != base:
                if pair[0] > base[0] or pair[1] > base[1]:
                    out.append(StrategyProfile(r, c))
    return tuple(sorted(out))


def oracle_is_equilibrium(game, x, y):
    """Exact no-profitable-deviation check on a mixed profile."""
    m, n = game.shape
    row_values = [
        sum(y[j] * game.payoffs[i][j][0] for j in range(n)) for i in range(m)
    ]
    best = max(row_values)
    for i in range(m):
        if x[i] > 0 and row_values[i] != best:
            return False
    col_values = [
        sum(x[i] * game.payoffs[i][j][1] for i in range(m)) for j in range(n)
    ]
    best = max(col_values)
    for j in range(n):
        if y[j] > 0 and col_values[j] != best:
            return False
    return True


def random_game(rng, max_rows=3, max_cols=3, low=-3, high=3):
    m = rng.randint(1, max_rows)
    n = rng.randint(1, max_cols)
    matrix = [
        [(Fraction(rng.randint(low, high)), Fraction(rng.randint(low, high))) for _ in range(n)]
        for _ in range(m)
    ]
    return make_game(
        "Row", "Col", [f"r{i}" for i in range(m)], [f"c{j}" for j in range(n)], matrix
    )


# ---------------------------------------------------------------------------
# fixtures


@pytest.fixture(scope="session")
def canonical_values():
    return models.canonical_publishing_values()


@pytest.fixture(scope="session")
def publishing_3x3(canonical_values):
    return models.publishing_game_3x3(canonical_values)


@pytest.fixture(scope="session")
def publishing_2x2(canonical_values):
    return models.publishing_game_2x2(canonical_values)


@pytest.fixture(scope="session")
def hanauske_pd():
    return models.hanauske_game(models.HanauskeParams(4, 1, 2, 1))


@pytest.fixture(scope="session")
def hanauske_staghunt():
    return models.hanauske_game(models.HanauskeParams(4, 1, 1, 2))


@pytest.fixture(scope="session")
def habermann_params():
    return models.HabermannParams(10, 2, 5, 1, 2, 3, 4)


@pytest.fixture(scope="session")
def habermann_game(habermann_params):
    return models.habermann_game(habermann_params)


@pytest.fixture(scope="session")
def matching_pennies():
    return make_game(
        "Even",
        "Odd",
        ["heads", "tails"],
        ["heads", "tails"],
        [[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]],
    )
