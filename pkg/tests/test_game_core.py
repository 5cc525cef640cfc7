import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    oracle_best_responses,
    oracle_dominated,
    oracle_pareto_dominators,
    oracle_pure_nash,
    random_game,
)
from oagames.errors import DimensionMismatch, DuplicateLabel, IndexOutOfBounds
from oagames.game_core import (
    DominanceKind,
    IedsPolicy,
    Player,
    PlayerOrder,
    StrategyProfile,
    VerdictKind,
    best_responses,
    dominated_strategies,
    ieds,
    make_game,
    pareto_status,
    pure_nash,
)

payoff_ints = st.integers(min_value=-3, max_value=3)


def games(max_side=4):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(
                st.lists(st.tuples(payoff_ints, payoff_ints), min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            ).map(
                lambda matrix: make_game(
                    "Row",
                    "Col",
                    [f"r{i}" for i in range(m)],
                    [f"c{j}" for j in range(n)],
                    matrix,
                )
            )
        )
    )


class TestMakeGame:
    def test_degenerate_1x1(self):
        game = make_game("A", "B", ["only"], ["only"], [[(0, 0)]])
        assert game.shape == (1, 1)
        assert game.payoffs[0][0] == (Fraction(0), Fraction(0))

    def test_publishing_matrix_is_valid(self, publishing_3x3):
        assert publishing_3x3.shape == (3, 3)
        assert publishing_3x3.row_strategies == ("OA", "C", "H")

    def test_wrong_row_count(self):
        with pytest.raises(DimensionMismatch):
            make_game("A", "B", list("abc"), list("xyz"), [[(0, 0)] * 3] * 2)

    def test_wrong_col_count(self):
        with pytest.raises(DimensionMismatch):
            make_game("A", "B", list("ab"), list("xyz"), [[(0, 0)] * 2] * 2)

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            make_game("A", "B", ["s", "s"], ["x", "y"], [[(0, 0)] * 2] * 2)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            make_game("A", "B", ["s"], ["x"], [[(0.5, 0)]])

    def test_string_rationals_accepted(self):
        game = make_game("A", "B", ["s"], ["x"], [[("3/7", 2)]])
        assert game.payoffs[0][0][0] == Fraction(3, 7)


class TestBestResponses:
    def test_publishing_tie_includes_both(self, publishing_3x3):
        # institution vs publisher-OA: payoffs 6, 6, 5
        assert best_responses(publishing_3x3, Player.ROW, 0) == (0, 1)

    def test_all_equal_returns_full_set(self):
        game = make_game("A", "B", list("ab"), list("xy"), [[(1, 1)] * 2] * 2)
        assert best_responses(game, Player.ROW, 0) == (0, 1)
        assert best_responses(game, Player.COL, 1) == (0, 1)

    def test_hanauske_defection(self, hanauske_pd):
        # row against O: 6 beats 5
        assert best_responses(hanauske_pd, Player.ROW, 0) == (1,)

    def test_out_of_bounds(self, hanauske_pd):
        with pytest.raises(IndexOutOfBounds):
            best_responses(hanauske_pd, Player.ROW, 2)

    @settings(max_examples=150, deadline=None)
    @given(games())
    def test_matches_oracle(self, game):
        for player in Player:
            opp = game.shape[1] if player is Player.ROW else game.shape[0]
            for j in range(opp):
                got = best_responses(game, player, j)
                assert got == oracle_best_responses(game, player, j)
                assert got


class TestPureNash:
    def test_hanauske_pd_stuck(self, hanauske_pd):
        assert pure_nash(hanauske_pd) == (StrategyProfile(1, 1),)

    def test_hanauske_staghunt_two(self, hanauske_staghunt):
        assert pure_nash(hanauske_staghunt) == (
            StrategyProfile(0, 0),
            StrategyProfile(1, 1),
        )

    def test_habermann_has_none(self, habermann_game):
        assert pure_nash(habermann_game) == ()

    def test_publishing_unique_excludes_c_oa(self, publishing_3x3):
        assert pure_nash(publishing_3x3) == (StrategyProfile(0, 0),)

    @settings(max_examples=150, deadline=None)
    @given(games())
    def test_matches_oracle(self, game):
        assert pure_nash(game) == oracle_pure_nash(game)


class TestDominance:
    def test_publishing_weak_institution(self, publishing_3x3):
        verdicts = dominated_strategies(publishing_3x3, Player.ROW, DominanceKind.WEAK)
        assert verdicts[1].kind is VerdictKind.WEAKLY_DOMINATED
        assert verdicts[1].dominator == 0
        assert verdicts[2].kind is VerdictKind.WEAKLY_DOMINATED
        assert verdicts[2].dominator == 0
        assert verdicts[0].kind is VerdictKind.NOT_DOMINATED

    def test_publishing_strict_blocked_by_tie(self, publishing_3x3):
        # the alpha_star tie in the publisher-C column blocks strictness for H
        verdicts = dominated_strategies(publishing_3x3, Player.ROW, DominanceKind.STRICT)
        assert verdicts[2].kind is VerdictKind.NOT_DOMINATED
        assert verdicts[1].kind is VerdictKind.NOT_DOMINATED

    def test_single_strategy_player(self):
        game = make_game("A", "B", ["only"], ["x", "y"], [[(1, 2), (3, 4)]])
        verdicts = dominated_strategies(game, Player.ROW, DominanceKind.WEAK)
        assert verdicts[0].kind is VerdictKind.NOT_DOMINATED

    @settings(max_examples=120, deadline=None)
    @given(games(), st.booleans())
    def test_matches_oracle(self, game, strict):
        kind = DominanceKind.STRICT if strict else DominanceKind.WEAK
        for player in Player:
            verdicts = dominated_strategies(game, player, kind)
            expected = oracle_dominated(game, player, strict)
            got = {
                i: v.dominator
                for i, v in verdicts.items()
                if v.kind is not VerdictKind.NOT_DOMINATED
            }
            assert set(got) == set(expected)


class TestIeds:
    def test_pd_strict_any_order(self, hanauske_pd):
        for order in PlayerOrder:
            reduced, trace = ieds(hanauske_pd, IedsPolicy(DominanceKind.STRICT, order))
            assert reduced.shape == (1, 1)
            assert reduced.row_strategies == ("∅",)
            assert reduced.col_strategies == ("∅",)
            assert {s.kind for s in trace.steps} == {DominanceKind.STRICT}

    def test_publishing_weak_row_first(self, publishing_3x3):
        reduced, trace = ieds(
            publishing_3x3, IedsPolicy(DominanceKind.WEAK, PlayerOrder.ROW_FIRST)
        )
        assert (reduced.row_strategies, reduced.col_strategies) == (("OA",), ("OA",))
        assert [(s.player, s.removed) for s in trace.steps] == [
            (Player.ROW, "C"),
            (Player.ROW, "H"),
            (Player.COL, "C"),
            (Player.COL, "H"),
        ]

    def test_publishing_weak_col_first_still_oa_oa(self, publishing_3x3):
        # diverges from the printed publisher-first outcome (OA, H)
        reduced, trace = ieds(
            publishing_3x3, IedsPolicy(DominanceKind.WEAK, PlayerOrder.COL_FIRST)
        )
        assert (reduced.row_strategies, reduced.col_strategies) == (("OA",), ("OA",))
        assert trace.steps[0].player is Player.COL

    def test_trace_invariants(self, publishing_3x3):
        reduced, trace = ieds(publishing_3x3)
        removed = [(s.player, s.removed) for s in trace.steps]
        assert len(set(removed)) == len(removed)
        removed_rows = {lbl for p, lbl in removed if p is Player.ROW}
        removed_cols = {lbl for p, lbl in removed if p is Player.COL}
        assert set(publishing_3x3.row_strategies) - removed_rows == set(
            reduced.row_strategies
        )
        assert set(publishing_3x3.col_strategies) - removed_cols == set(
            reduced.col_strategies
        )
        assert [s.round for s in trace.steps] == list(range(1, len(trace.steps) + 1))
        assert trace.terminal_game == reduced

    def test_strict_order_independent_sampled(self):
        rng = random.Random(2024)
        for _ in range(200):
            game = random_game(rng, max_rows=4, max_cols=4)
            terminals = {
                (
                    ieds(game, IedsPolicy(DominanceKind.STRICT, order))[0].row_strategies,
                    ieds(game, IedsPolicy(DominanceKind.STRICT, order))[0].col_strategies,
                )
                for order in PlayerOrder
            }
            assert len(terminals) == 1

    @settings(max_examples=100, deadline=None)
    @given(games())
    def test_strict_never_removes_nash_strategies(self, game):
        nash = pure_nash(game)
        _, trace = ieds(game, IedsPolicy(DominanceKind.STRICT, PlayerOrder.ALTERNATING))
        removed = {(s.player, s.removed) for s in trace.steps}
        for profile in nash:
            assert (Player.ROW, game.row_strategies[profile.row_index]) not in removed
            assert (Player.COL, game.col_strategies[profile.col_index]) not in removed


class TestParetoStatus:
    def test_pd_mutual_defection_dominated(self, hanauske_pd):
        status = pareto_status(hanauske_pd, StrategyProfile(1, 1))
        assert status.dominated_by == (StrategyProfile(0, 0),)

    def test_all_equal_optimal(self):
        game = make_game("A", "B", list("ab"), list("xy"), [[(2, 2)] * 2] * 2)
        assert pareto_status(game, StrategyProfile(0, 1)).optimal

    def test_publishing_oa_oa_dominated_by_c_oa(self, publishing_3x3):
        status = pareto_status(publishing_3x3, StrategyProfile(0, 0))
        assert status.dominated_by == (StrategyProfile(1, 0),)
        assert not status.optimal

    def test_out_of_bounds(self, hanauske_pd):
        with pytest.raises(IndexOutOfBounds):
            pareto_status(hanauske_pd, StrategyProfile(2, 0))

    @settings(max_examples=120, deadline=None)
    @given(games())
    def test_matches_oracle_and_antisymmetric(self, game):
        for profile in game.profiles():
            dominated_by = pareto_status(game, profile).dominated_by
            assert dominated_by == oracle_pareto_dominators(game, profile)
            for other in dominated_by:
                assert profile not in pareto_status(game, other).dominated_by


@settings(max_examples=60, deadline=None)
@given(games())
def test_operations_are_deterministic(game):
    assert pure_nash(game) == pure_nash(game)
    policy = IedsPolicy(DominanceKind.WEAK, PlayerOrder.ALTERNATING)
    assert ieds(game, policy) == ieds(game, policy)
