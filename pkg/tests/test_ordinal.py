import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oagames import models, ordinal
from oagames.errors import (
    CycleDetected,
    EqualityStrictConflict,
    ExtensionLimitExceeded,
    MissingSymbol,
    ParseError,
)
from oagames.game_core import StrategyProfile
from oagames.ordinal import (
    Mixed2x2EquilibriumEquals,
    ProfileIsPureNash,
    canonical_instantiation,
    constraint_set,
    format_constraints,
    holds_for_all,
    instantiate,
    linear_extensions,
    make_symbolic_game,
    parse_constraints,
    sample_instantiation,
    satisfies,
    split_equality_variants,
    validate,
)


class TestValidate:
    def test_institution_chain_ok(self):
        validate(models.institution_constraints(True))
        validate(models.institution_constraints(False))

    def test_two_cycle(self):
        cs = constraint_set(strict=[("a", "b"), ("b", "a")])
        with pytest.raises(CycleDetected):
            validate(cs)

    def test_equality_strict_conflict(self):
        cs = constraint_set(strict=[("a", "b")], equalities=[("a", "b")])
        with pytest.raises(EqualityStrictConflict):
            validate(cs)

    def test_longer_cycle_reports_path(self):
        cs = constraint_set(strict=[("a", "b"), ("b", "c"), ("c", "a")])
        with pytest.raises(CycleDetected) as err:
            validate(cs)
        assert len(err.value.path) >= 3

    def test_conflicting_literal_anchor(self):
        cs = constraint_set(anchors=[("a", "=", 3), ("a", "=", 5)])
        with pytest.raises(EqualityStrictConflict):
            validate(cs)


class TestLinearExtensions:
    def test_publisher_chain_with_free_zero_has_eight(self):
        exts = linear_extensions(models.publisher_constraints(False))
        assert len(exts) == 8
        positions = {e.rank(Fraction(0)) for e in exts}
        assert positions == set(range(8))

    def test_fully_ordered_chain_single(self):
        exts = linear_extensions(models.publisher_constraints(True))
        assert len(exts) == 1
        assert exts[0].rank(Fraction(0)) == 7

    def test_three_free_symbols(self):
        assert len(linear_extensions(constraint_set(symbols="abc"))) == 6

    def test_chain_plus_free_anchor_counts(self):
        for k in range(1, 6):
            symbols = [f"s{i}" for i in range(k)]
            cs = constraint_set(
                symbols, strict=zip(symbols, symbols[1:]), literals=[7]
            )
            assert len(linear_extensions(cs)) == k + 1

    def test_limit_exceeded(self):
        with pytest.raises(ExtensionLimitExceeded):
            linear_extensions(constraint_set(symbols="abcdef"), limit=100)

    def test_deterministic_order(self):
        cs = models.publisher_constraints(False)
        assert linear_extensions(cs) == linear_extensions(cs)


class TestCanonicalInstantiation:
    def test_institution_values(self):
        (ext,) = linear_extensions(models.institution_constraints(True))
        values = canonical_instantiation(ext)
        assert values == {
            "alpha": 6,
            "alpha_star": 5,
            "omega_star": 5,
            "beta_star": 4,
            "beta": 3,
            "omega": 2,
        }

    def test_publisher_values_zero_preserved(self):
        (ext,) = linear_extensions(models.publisher_constraints(True))
        values = canonical_instantiation(ext)
        assert values == {
            "omega_p": 8,
            "beta_ppp": 7,
            "beta_pp": 6,
            "beta_p": 5,
            "alpha_pp": 4,
            "alpha_p": 3,
            "omega_pp": 2,
        }

    def test_single_symbol(self):
        (ext,) = linear_extensions(constraint_set(symbols=["x"]))
        assert canonical_instantiation(ext) == {"x": 1}

    def test_literal_above_default_ladder_shifts_neighbours(self):
        cs = constraint_set(strict=[("a", "b")], anchors=[("a", ">", 5), ("b", ">", 5)])
        (ext,) = linear_extensions(cs)
        values = canonical_instantiation(ext)
        assert values["a"] > values["b"] > 5

    def test_segment_between_two_literals(self):
        cs = constraint_set(
            symbols=["x"], anchors=[("x", ">", 0)], literals=[Fraction(1, 2)]
        )
        for ext in linear_extensions(cs):
            values = canonical_instantiation(ext)
            assert satisfies(cs, values)

    def test_round_trip_induces_extension_order(self):
        for ext in linear_extensions(models.default_constraints(False), limit=20000)[
            :50
        ]:
            values = canonical_instantiation(ext)

            def value_of(cls):
                node = next(iter(cls))
                return values[node] if isinstance(node, str) else node

            ranked = [value_of(cls) for cls in ext.classes]
            assert all(a > b for a, b in zip(ranked, ranked[1:]))


class TestSampleInstantiation:
    def test_seed_determinism(self):
        cs = models.default_constraints(False)
        assert sample_instantiation(cs, 9) == sample_instantiation(cs, 9)

    def test_thousand_samples_all_satisfy(self):
        cs = models.default_constraints(False)
        for seed in range(1000):
            assert satisfies(cs, sample_instantiation(cs, seed))

    def test_seeds_vary(self):
        cs = models.default_constraints(True)
        distinct = {
            tuple(sorted(sample_instantiation(cs, seed).items())) for seed in range(30)
        }
        assert len(distinct) > 25


class TestHoldsForAll:
    def test_oa_oa_nash_under_nonnegativity(self):
        verdict = holds_for_all(
            models.publishing_symbolic_3x3(),
            models.default_constraints(True),
            ProfileIsPureNash(StrategyProfile(0, 0)),
        )
        assert verdict.holds and verdict.exhaustive
        assert verdict.extensions_checked == 792

    def test_c_oa_fails_everywhere_with_reverifiable_witness(self):
        symbolic = models.publishing_symbolic_3x3()
        verdict = holds_for_all(
            symbolic,
            models.default_constraints(False),
            ProfileIsPureNash(StrategyProfile(1, 0)),
        )
        assert not verdict.holds
        witness = verdict.counterexample
        assert witness is not None
        assert satisfies(models.default_constraints(False), witness)
        game = instantiate(symbolic, witness)
        assert not ProfileIsPureNash(StrategyProfile(1, 0)).evaluate(game)

    def test_single_extension_collapses_to_direct_evaluation(self):
        symbolic = make_symbolic_game("R", "C", ["u", "d"], ["l", "r"],
                                      [[("a", "a"), ("b", "b")], [("b", "b"), ("a", "a")]])
        cs = constraint_set(strict=[("a", "b")])
        verdict = holds_for_all(symbolic, cs, ProfileIsPureNash(StrategyProfile(0, 0)))
        (ext,) = linear_extensions(cs)
        direct = ProfileIsPureNash(StrategyProfile(0, 0)).evaluate(
            instantiate(symbolic, canonical_instantiation(ext))
        )
        assert verdict.extensions_checked == 1
        assert verdict.holds == direct

    def test_mixed_predicate_exhaustive_with_dominance(self):
        verdict = holds_for_all(
            models.publishing_symbolic_2x2(),
            models.default_constraints(True),
            Mixed2x2EquilibriumEquals(Fraction(1), Fraction(1)),
        )
        assert verdict.holds and verdict.exhaustive

    def test_mixed_predicate_samples_without_dominance(self):
        symbolic = make_symbolic_game(
            "R",
            "C",
            ["u", "d"],
            ["l", "r"],
            [[("a", "d"), ("b", "c")], [("b", "c"), ("a", "d")]],
        )
        cs = constraint_set(strict=[("a", "b"), ("c", "d")])
        verdict = holds_for_all(
            symbolic, cs, Mixed2x2EquilibriumEquals(Fraction(1, 2), Fraction(1, 2))
        )
        assert verdict.holds
        assert not verdict.exhaustive  # matching-pennies shape has no dominance

    def test_missing_symbol(self):
        symbolic = make_symbolic_game("R", "C", ["u"], ["l"], [[("zz", 0)]])
        with pytest.raises(MissingSymbol):
            holds_for_all(symbolic, constraint_set(symbols=["a"]), ProfileIsPureNash(StrategyProfile(0, 0)))

    def test_order_determined_predicates_agree_with_samples(self):
        # canonical and sampled instantiations of one extension agree
        symbolic = models.publishing_symbolic_3x3()
        cs = models.default_constraints(False)
        predicate = ProfileIsPureNash(StrategyProfile(0, 0))
        rng = random.Random(5)
        for ext in random.Random(1).sample(list(linear_extensions(cs)), 12):
            canon = predicate.evaluate(instantiate(symbolic, canonical_instantiation(ext)))
            sampled_values = ordinal._sample_values_along(ext, rng)
            assert satisfies(cs, sampled_values)
            assert predicate.evaluate(instantiate(symbolic, sampled_values)) == canon


class TestEqualitySplit:
    def test_institution_chain_two_variants(self):
        variants = split_equality_variants(models.institution_constraints(True))
        assert len(variants) == 2
        for cs in variants:
            validate(cs)
            assert not cs.equalities


class TestTextSyntax:
    def test_parse_chains(self):
        cs = parse_constraints(
            "alpha > alpha_star\nalpha_star ~= omega_star\nalpha_p > 0\n"
        )
        assert ("alpha", "alpha_star") in cs.strict_relations
        assert ("alpha_star", "omega_star") in cs.equalities
        assert ("alpha_p", ">", Fraction(0)) in cs.anchors

    def test_parse_rational_literal_and_comments(self):
        cs = parse_constraints("x >= 3/7  # anchored\n\n")
        assert ("x", ">=", Fraction(3, 7)) in cs.anchors

    def test_round_trip(self):
        for flag in (True, False):
            cs = models.default_constraints(flag)
            reparsed = parse_constraints(format_constraints(cs), extra_literals=cs.literals)
            assert reparsed == cs

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_constraints("a < b")
        with pytest.raises(ParseError):
            parse_constraints("3 > a")
        with pytest.raises(ParseError):
            parse_constraints("1 > 2")
        with pytest.raises(ParseError):
            parse_constraints("a >= b")
        with pytest.raises(ParseError):
            parse_constraints("a ! b")


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000))
def test_random_chain_canonical_reverifies(k, seed):
    rng = random.Random(seed)
    symbols = [f"s{i}" for i in range(k)]
    rng.shuffle(symbols)
    cs = constraint_set(symbols, strict=zip(symbols, symbols[1:]), literals=[0])
    for ext in linear_extensions(cs):
        assert satisfies(cs, canonical_instantiation(ext))
    assert satisfies(cs, sample_instantiation(cs, seed))
