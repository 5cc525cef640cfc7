"""Audit of the printed equilibrium claims of the publishing-market analysis.

The source analysis prints several equilibrium statements (dominance
summaries, the best-response table, the two elimination orders, the mixed
threshold algebra, the convergence narrative).  Some of them do not
follow from the preference chains the same analysis fixes.  Each printed
statement is registered as a claim, checked against solver ground truth
over every admissible ordinal instantiation, and reported as holding,
holding under a named condition, failing with a re-verifiable
counterexample, or being internally inconsistent as text.

Everything here is deterministic: identical flags give identical reports,
and every embedded counterexample reproduces its failure when replayed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from . import mixed as mixed_mod
from . import ordinal
from .dynamics import ShareState, replicator_simulate
from .errors import ConstraintError, DomainError, UnknownClaim
from .game_core import (
    DominanceKind,
    IedsPolicy,
    Player,
    PlayerOrder,
    StrategyProfile,
)
from .models import (
    INSTITUTION_SYMBOLS,
    canonical_publishing_values,
    default_constraints,
    institution_constraints,
    publisher_constraints,
    publishing_game_2x2,
    publishing_symbolic_2x2,
    publishing_symbolic_3x3,
)
from .ordinal import (
    IedsReducesTo,
    LinearExtension,
    Mixed2x2EquilibriumEquals,
    ProfileIsPureNash,
    ProfileParetoOptimal,
    StrategyDominated,
    canonical_instantiation,
    holds_for_all,
    linear_extensions,
    sample_instantiation,
)


class ClaimStatus(Enum):
    HOLDS_FOR_ALL = "holds_for_all"
    HOLDS_CONDITIONALLY = "holds_conditionally"
    FAILS_WITH_COUNTEREXAMPLE = "fails_with_counterexample"
    NOT_WELL_FORMED = "not_well_formed"
    TEXTUAL_INCONSISTENCY = "textual_inconsistency"


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    quote: str
    expected: ClaimStatus


@dataclass(frozen=True)
class AuditRecord:
    id: str
    anchor: str
    quote: str
    status: ClaimStatus
    explanation: str
    condition: str | None = None
    counterexample: dict[str, Fraction] | None = None


@dataclass(frozen=True)
class AuditReport:
    nonnegativity: bool
    records: tuple[AuditRecord, ...]

    def record(self, claim_id: str) -> AuditRecord:
        for record in self.records:
            if record.id == claim_id:
                return record
        raise UnknownClaim(claim_id)


OA_OA = StrategyProfile(0, 0)
C_OA = StrategyProfile(1, 0)
OA_H = StrategyProfile(0, 2)

ROW_FIRST_WEAK = IedsPolicy(DominanceKind.WEAK, PlayerOrder.ROW_FIRST)
COL_FIRST_WEAK = IedsPolicy(DominanceKind.WEAK, PlayerOrder.COL_FIRST)

CLAIMS: tuple[Claim, ...] = (
    Claim(
        "C1",
        "summary table, institution-first elimination row",
        "IEDS of institutions leads to equilibrium (OA, OA)",
        ClaimStatus.HOLDS_CONDITIONALLY,
    ),
    Claim(
        "C2",
        "summary table, publisher-first elimination row",
        "equilibrium (OA, H)",
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE,
    ),
    Claim(
        "C3",
        "best-response table",
        "there are two Nash equilibria: (OA, OA) and (C, OA)",
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE,
    ),
    Claim(
        "C4",
        "conclusion",
        "These equilibria are Pareto optimal",
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE,
    ),
    Claim(
        "C5",
        "mixed-strategy section",
        "intersect in p = q = 1",
        ClaimStatus.HOLDS_FOR_ALL,
    ),
    Claim(
        "C6",
        "dominance tables summary",
        "strictly dominates strategy H / strictly dominated by strategy C",
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE,
    ),
    Claim(
        "C7",
        "mixed-strategy section, threshold algebra",
        "q = (alpha - alpha_star - omega_star + omega_p) / (omega_p + alpha_star)",
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE,
    ),
    Claim(
        "C8",
        "summary table, publisher-first comment vs equilibrium column",
        "IEDS of publishers leads to two equilibria (C, H) and (H, H)",
        ClaimStatus.TEXTUAL_INCONSISTENCY,
    ),
    Claim(
        "C9",
        "generalization section",
        "All the players will converge on an OA publication model",
        ClaimStatus.HOLDS_FOR_ALL,
    ),
)

_CLAIMS_BY_ID = {claim.id: claim for claim in CLAIMS}


def _alpha_p_positive(extension: LinearExtension) -> bool:
    return extension.rank("alpha_p") < extension.rank(Fraction(0))


def _classify(
    extensions,
    symbolic,
    predicate,
    condition=None,
    condition_name: str | None = None,
):
    """Reduce per-extension results to a status plus witness data."""
    results, first_cex, exhaustive = ordinal._evaluate_over(
        extensions, symbolic, predicate, condition
    )
    held = [ok for ok, _ in results]
    if all(held):
        return ClaimStatus.HOLDS_FOR_ALL, None, None, exhaustive
    if condition is not None and all(ok == cond for ok, cond in results):
        return ClaimStatus.HOLDS_CONDITIONALLY, condition_name, first_cex, exhaustive
    return ClaimStatus.FAILS_WITH_COUNTEREXAMPLE, None, first_cex, exhaustive


def _record_from(claim: Claim, status, explanation, condition=None, counterexample=None):
    return AuditRecord(
        claim.id,
        claim.anchor,
        claim.quote,
        status,
        explanation,
        condition,
        counterexample,
    )


def _audit_c1(extensions, game3):
    claim = _CLAIMS_BY_ID["C1"]
    status, condition, cex, _ = _classify(
        extensions,
        game3,
        IedsReducesTo(ROW_FIRST_WEAK, OA_OA),
        condition=_alpha_p_positive,
        condition_name="alpha_p > 0",
    )
    if status is ClaimStatus.HOLDS_FOR_ALL:
        note = "institution-first weak elimination reaches (OA, OA) in every extension"
    elif status is ClaimStatus.HOLDS_CONDITIONALLY:
        note = (
            "institution-first weak elimination reaches (OA, OA) exactly when "
            "alpha_p > 0; with the publisher's OA payoff below 0 it reaches (OA, C)"
        )
    else:
        note = "institution-first weak elimination does not reach (OA, OA)"
    return _record_from(claim, status, note, condition, cex)


def _audit_c2(extensions, game3):
    claim = _CLAIMS_BY_ID["C2"]
    status, condition, cex, _ = _classify(
        extensions, game3, IedsReducesTo(COL_FIRST_WEAK, OA_H)
    )
    note = (
        "publisher-first weak elimination never reaches (OA, H): it reaches "
        "(OA, OA) whenever alpha_p > 0, since the publisher's C column is the "
        "only one a weak dominance argument removes"
    )
    return _record_from(claim, status, note, condition, cex)


def _audit_c3(extensions, game3):
    claim = _CLAIMS_BY_ID["C3"]
    oa_status, oa_condition, _, _ = _classify(
        extensions,
        game3,
        ProfileIsPureNash(OA_OA),
        condition=_alpha_p_positive,
        condition_name="alpha_p > 0",
    )
    c_status, _, c_cex, _ = _classify(extensions, game3, ProfileIsPureNash(C_OA))
    if oa_status is ClaimStatus.HOLDS_FOR_ALL:
        oa_note = "(OA, OA) is a Nash equilibrium in every extension"
    else:
        oa_note = f"(OA, OA) is a Nash equilibrium exactly when {oa_condition}"
    if oa_status is ClaimStatus.HOLDS_FOR_ALL and c_status is ClaimStatus.HOLDS_FOR_ALL:
        return _record_from(claim, ClaimStatus.HOLDS_FOR_ALL, oa_note)
    note = (
        "(C, OA) is never a Nash equilibrium: against the institution's C the "
        "publisher deviates from OA to H because beta_ppp > beta_pp; "
        + oa_note
    )
    return _record_from(
        claim, ClaimStatus.FAILS_WITH_COUNTEREXAMPLE, note, oa_condition, c_cex
    )


def _audit_c4(extensions, game3):
    claim = _CLAIMS_BY_ID["C4"]
    status, _, cex, _ = _classify(extensions, game3, ProfileParetoOptimal(OA_OA))
    second_status, _, _, _ = _classify(extensions, game3, ProfileParetoOptimal(C_OA))
    note = (
        "(OA, OA) is Pareto dominated by (C, OA) in every extension: the "
        "institution is tied at alpha while the publisher strictly prefers "
        "beta_pp over alpha_p"
    )
    if second_status is ClaimStatus.HOLDS_FOR_ALL:
        note += "; (C, OA) itself is Pareto optimal in every extension"
    return _record_from(claim, status, note, None, cex)


def _audit_c5(extensions, game2):
    claim = _CLAIMS_BY_ID["C5"]
    status, _, cex, exhaustive = _classify(
        extensions, game2, Mixed2x2EquilibriumEquals(Fraction(1), Fraction(1))
    )
    note = (
        "the OA/H restriction has the unique equilibrium (p, q) = (1, 1) in "
        "every extension: the institution's OA row strictly dominates H and "
        "the publisher then prefers alpha_p over omega_pp"
    )
    if exhaustive:
        note += " (dominance makes per-extension evaluation exhaustive)"
    return _record_from(claim, status, note, None, cex)


def _audit_c6(extensions, game3):
    claim = _CLAIMS_BY_ID["C6"]
    inst_strict, _, cex1, _ = _classify(
        extensions, game3, StrategyDominated(Player.ROW, 2, DominanceKind.STRICT)
    )
    pub_strict, _, cex2, _ = _classify(
        extensions, game3, StrategyDominated(Player.COL, 0, DominanceKind.STRICT)
    )
    inst_weak, _, _, _ = _classify(
        extensions, game3, StrategyDominated(Player.ROW, 2, DominanceKind.WEAK)
    )
    note = (
        "neither strictness claim holds in any extension: the institution's H "
        "row ties OA at alpha_star in the publisher-C column (weak dominance "
        "only), and the publisher's OA column is never dominated by C since "
        "beta_p < beta_pp"
    )
    if inst_weak is ClaimStatus.HOLDS_FOR_ALL:
        note += "; the weak version for the institution's H holds in every extension"
    status = (
        ClaimStatus.HOLDS_FOR_ALL
        if inst_strict is ClaimStatus.HOLDS_FOR_ALL
        and pub_strict is ClaimStatus.HOLDS_FOR_ALL
        else ClaimStatus.FAILS_WITH_COUNTEREXAMPLE
    )
    return _record_from(claim, status, note, None, cex1 or cex2)


def _printed_threshold(values) -> Fraction | None:
    denominator = values["omega_p"] + values["alpha_star"]
    if denominator == 0:
        return None
    return (
        values["alpha"] - values["alpha_star"] - values["omega_star"] + values["omega_p"]
    ) / denominator


def _audit_c7(nonnegativity: bool):
    claim = _CLAIMS_BY_ID["C7"]
    constraints = default_constraints(nonnegativity)
    witnesses = [canonical_publishing_values()]
    witnesses += [sample_instantiation(constraints, seed) for seed in range(5)]
    counterexample = None
    for values in witnesses:
        game = publishing_game_2x2(values)
        q_star, _ = mixed_mod.indifference_thresholds(game)
        printed = _printed_threshold(values)
        if q_star != printed and counterexample is None:
            counterexample = values
    printed_canonical = _printed_threshold(witnesses[0])
    note = (
        "the printed institution threshold mixes the two players' symbols and "
        f"evaluates to {printed_canonical} on the canonical instantiation, but "
        "no indifference point exists: the OA row is weakly dominant for every "
        "opponent mixture; the printed publisher indifference line reduces to "
        "alpha_p = omega_pp, contradicting the chain alpha_p > omega_pp"
    )
    status = (
        ClaimStatus.FAILS_WITH_COUNTEREXAMPLE
        if counterexample is not None
        else ClaimStatus.HOLDS_FOR_ALL
    )
    return _record_from(claim, status, note, None, counterexample)


def _audit_c8():
    claim = _CLAIMS_BY_ID["C8"]
    note = (
        "the summary row for publisher-first elimination names (OA, H) in its "
        "equilibrium column but '(C, H) and (H, H)' in its comment; the two "
        "statements contradict each other, so no constraint evaluation applies"
    )
    return _record_from(claim, ClaimStatus.TEXTUAL_INCONSISTENCY, note)


def _audit_c9(extensions, game2, nonnegativity: bool):
    claim = _CLAIMS_BY_ID["C9"]
    unique_status, _, cex, _ = _classify(
        extensions, game2, Mixed2x2EquilibriumEquals(Fraction(1), Fraction(1))
    )
    converged = True
    inst_sets = linear_extensions(institution_constraints(nonnegativity), limit=64)
    for extension in inst_sets:
        values = dict(canonical_publishing_values())
        values.update(canonical_instantiation(extension))
        game = ordinal.instantiate(publishing_symbolic_3x3(), values)
        lowest = min(
            float(game.payoff_of(Player.ROW, i, j)) for i in range(3) for j in range(3)
        )
        shift = max(0.0, 1.0 - lowest)
        trajectory = replicator_simulate(
            game,
            ShareState(1 / 3, 1 / 3, 1 / 3),
            herd_weight=0.0,
            payoff_shift=shift,
            steps=1500,
        )
        if trajectory.stats.converged_to != 0:
            converged = False
            if cex is None:
                cex = values
    status = (
        ClaimStatus.HOLDS_FOR_ALL
        if unique_status is ClaimStatus.HOLDS_FOR_ALL and converged
        else ClaimStatus.FAILS_WITH_COUNTEREXAMPLE
    )
    note = (
        "the unique mixed equilibrium is the OA corner in every extension, and "
        "herding-free replicator dynamics from the uniform mix converge to the "
        "OA share for the canonical instantiation of every institution ordering"
    )
    return _record_from(claim, status, note, None, cex)


def run_audit(nonnegativity: bool = False, extension_limit: int = 200_000) -> AuditReport:
    """Evaluate all registered claims against solver ground truth.

    The default leaves the nonnegativity anchors off so placement-dependent
    claims expose their condition (notably C1's alpha_p > 0).
    """
    constraints = default_constraints(nonnegativity)
    extensions = linear_extensions(constraints, limit=extension_limit)
    game3 = publishing_symbolic_3x3()
    game2 = publishing_symbolic_2x2()
    records = (
        _audit_c1(extensions, game3),
        _audit_c2(extensions, game3),
        _audit_c3(extensions, game3),
        _audit_c4(extensions, game3),
        _audit_c5(extensions, game2),
        _audit_c6(extensions, game3),
        _audit_c7(nonnegativity),
        _audit_c8(),
        _audit_c9(extensions, game2, nonnegativity),
    )
    return AuditReport(nonnegativity, tuple(sorted(records, key=lambda r: r.id)))


# ---------------------------------------------------------------------------
# minimal-repair search


class RepairOutcome(Enum):
    ALREADY_HOLDS = "already_holds"
    REPAIRS_FOUND = "repairs_found"
    NO_REPAIR_FOUND = "no_repair_found"
    UNREPAIRABLE_TEXTUAL = "unrepairable_textual"


@dataclass(frozen=True)
class Repair:
    edits: tuple[str, ...]
    constraints: ordinal.OrderingConstraintSet


@dataclass(frozen=True)
class RepairSearchResult:
    claim_id: str
    outcome: RepairOutcome
    repairs: tuple[Repair, ...] = ()


def _repair_predicate(claim_id: str):
    """The single failing predicate each repairable claim targets."""
    game3 = publishing_symbolic_3x3()
    game2 = publishing_symbolic_2x2()
    table = {
        "C1": (game3, IedsReducesTo(ROW_FIRST_WEAK, OA_OA)),
        "C2": (game3, IedsReducesTo(COL_FIRST_WEAK, OA_H)),
        "C3": (game3, ProfileIsPureNash(C_OA)),
        "C4": (game3, ProfileParetoOptimal(OA_OA)),
        "C5": (game2, Mixed2x2EquilibriumEquals(Fraction(1), Fraction(1))),
        "C6": (game3, StrategyDominated(Player.ROW, 2, DominanceKind.STRICT)),
        "C9": (game2, Mixed2x2EquilibriumEquals(Fraction(1), Fraction(1))),
    }
    return table.get(claim_id)


def _swap_symbols(cs: ordinal.OrderingConstraintSet, a: str, b: str):
    def sub(name: str) -> str:
        return b if name == a else a if name == b else name

    return ordinal.OrderingConstraintSet(
        cs.symbols,
        frozenset((sub(x), sub(y)) for x, y in cs.strict_relations),
        frozenset(tuple(sorted((sub(x), sub(y)))) for x, y in cs.equalities),
        frozenset((sub(s), rel, lit) for s, rel, lit in cs.anchors),
        cs.literals,
    )


def _edit_vocabulary(cs: ordinal.OrderingConstraintSet):
    """Abstract single edits, in deterministic order.

    Swaps cover the chain adjacencies (the strict pairs as given),
    relaxations turn one strict pair into a tie, and the 0 anchor moves by
    adding or dropping a ``symbol > 0`` anchor.
    """
    edits: list[tuple] = []
    for a, b in sorted(cs.strict_relations):
        edits.append(("swap", a, b))
    for a, b in sorted(cs.strict_relations):
        edits.append(("relax", a, b))
    zero = Fraction(0)
    for symbol in sorted(cs.symbols):
        if (symbol, ">", zero) not in cs.anchors:
            edits.append(("anchor", symbol))
    for anchor in sorted(cs.anchors, key=lambda t: (t[0], t[1], t[2])):
        edits.append(("unanchor", *anchor))
    return edits


def _apply_edit(cs: ordinal.OrderingConstraintSet, edit: tuple):
    """Apply one abstract edit, or return None when it no longer applies."""
    kind = edit[0]
    if kind == "swap":
        _, a, b = edit
        if (a, b) not in cs.strict_relations:
            return None, None
        return f"swap {a} and {b}", _swap_symbols(cs, a, b)
    if kind == "relax":
        _, a, b = edit
        if (a, b) not in cs.strict_relations:
            return None, None
        repaired = replace(
            cs,
            strict_relations=cs.strict_relations - {(a, b)},
            equalities=cs.equalities | {tuple(sorted((a, b)))},
        )
        return f"relax {a} > {b} to a tie", repaired
    zero = Fraction(0)
    if kind == "anchor":
        _, symbol = edit
        anchor = (symbol, ">", zero)
        if anchor in cs.anchors:
            return None, None
        repaired = replace(
            cs, anchors=cs.anchors | {anchor}, literals=cs.literals | {zero}
        )
        return f"anchor {symbol} > 0", repaired
    _, symbol, rel, lit = edit
    anchor = (symbol, rel, lit)
    if anchor not in cs.anchors:
        return None, None
    return f"drop anchor {symbol} {rel} {lit}", replace(cs, anchors=cs.anchors - {anchor})


def repair_search(
    claim_id: str,
    constraints: ordinal.OrderingConstraintSet,
    max_edits: int = 1,
    extension_limit: int = 200_000,
) -> RepairSearchResult:
    """Smallest constraint edits making the claim's predicate hold everywhere.

    Edits are adjacent-chain swaps, strict-to-tie relaxations, and moving
    the 0 anchor (adding or dropping a symbol > 0 anchor).  All successful
    edit sets of the minimal size are returned, in enumeration order.
    """
    if claim_id not in _CLAIMS_BY_ID:
        raise UnknownClaim(claim_id)
    if not 0 <= max_edits <= 3:
        raise DomainError("max_edits must lie in 0..3")
    if claim_id == "C8":
        return RepairSearchResult(claim_id, RepairOutcome.UNREPAIRABLE_TEXTUAL)
    target = _repair_predicate(claim_id)
    if target is None:
        return RepairSearchResult(claim_id, RepairOutcome.UNREPAIRABLE_TEXTUAL)
    symbolic, predicate = target

    def universally_holds(cs) -> bool:
        try:
            ordinal.validate(cs)
        except ConstraintError:
            return False
        return holds_for_all(symbolic, cs, predicate, limit=extension_limit).holds

    if universally_holds(constraints):
        return RepairSearchResult(claim_id, RepairOutcome.ALREADY_HOLDS)

    vocabulary = _edit_vocabulary(constraints)
    for size in range(1, max_edits + 1):
        found = []
        for combo in itertools.combinations(vocabulary, size):
            cs = constraints
            descriptions = []
            for edit in combo:
                description, repaired = _apply_edit(cs, edit)
                if repaired is None:
                    break
                descriptions.append(description)
                cs = repaired
            else:
                if universally_holds(cs):
                    found.append(Repair(tuple(descriptions), cs))
        if found:
            return RepairSearchResult(claim_id, RepairOutcome.REPAIRS_FOUND, tuple(found))
    return RepairSearchResult(claim_id, RepairOutcome.NO_REPAIR_FOUND)
