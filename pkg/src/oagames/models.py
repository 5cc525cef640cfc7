"""Parametric generators and formula evaluators for the market models.

Covers the publishing game itself (the 3x3 and 2x2 payoff tables, the
utility and profit formalisations, the preference chains) and the three
smaller games and formula sets it builds on: the symmetric researcher
reputation game, the author-versus-publisher oscillation game, and the
signalling-model revenue formulas.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import ordinal
from .errors import DomainError
from .game_core import NormalFormGame, as_payoff, make_game


class ConsistencyWarning(UserWarning):
    """Inputs produce payoffs violating a documented preference chain."""


# ---------------------------------------------------------------------------
# publishing payoff symbols and ordering chains

INSTITUTION_SYMBOLS = ("alpha", "alpha_star", "beta", "beta_star", "omega", "omega_star")
PUBLISHER_SYMBOLS = (
    "alpha_p",
    "alpha_pp",
    "beta_p",
    "beta_pp",
    "beta_ppp",
    "omega_p",
    "omega_pp",
)

_INSTITUTION_CHAIN = ("alpha", "alpha_star", "beta_star", "beta", "omega")
_PUBLISHER_CHAIN = (
    "omega_p",
    "beta_ppp",
    "beta_pp",
    "beta_p",
    "alpha_pp",
    "alpha_p",
    "omega_pp",
)

PUBLISHING_ROWS = ("OA", "C", "H")
PUBLISHING_COLS = ("OA", "C", "H")

# cell layout of the general payoff table; 0 literals are the publisher's
# no-agreement payoffs
_CELLS_3X3 = (
    (("alpha", "alpha_p"), ("alpha_star", 0), ("alpha_star", "omega_pp")),
    (("alpha", "beta_pp"), ("beta", "beta_p"), ("beta_star", "beta_ppp")),
    (("omega_star", "omega_p"), ("alpha_star", 0), ("omega", "omega_p")),
)
_CELLS_2X2 = (
    (("alpha", "alpha_p"), ("alpha_star", "omega_pp")),
    (("omega_star", "omega_p"), ("omega", "omega_p")),
)


@dataclass(frozen=True)
class PublishingPayoffSymbols:
    """The thirteen payoff symbols of the publishing game.

    ``alpha_pp`` sits in the publisher preference chain but in no matrix
    cell; it is carried as a constrained-but-unused symbol.
    """

    institution: tuple[str, ...] = INSTITUTION_SYMBOLS
    publisher: tuple[str, ...] = PUBLISHER_SYMBOLS

    @property
    def all(self) -> tuple[str, ...]:
        return self.institution + self.publisher

    @property
    def matrix_symbols(self) -> tuple[str, ...]:
        return tuple(s for s in self.all if s != "alpha_pp")


def institution_constraints(nonnegativity: bool = True) -> ordinal.OrderingConstraintSet:
    """alpha > alpha_star ~ omega_star > beta_star > beta > omega."""
    strict = list(zip(_INSTITUTION_CHAIN, _INSTITUTION_CHAIN[1:]))
    anchors = (
        [(s, ">", 0) for s in INSTITUTION_SYMBOLS] if nonnegativity else []
    )
    return ordinal.constraint_set(
        INSTITUTION_SYMBOLS,
        strict=strict,
        equalities=[("alpha_star", "omega_star")],
        anchors=anchors,
        literals=[0],
    )


def publisher_constraints(nonnegativity: bool = True) -> ordinal.OrderingConstraintSet:
    """omega_p > beta_ppp > beta_pp > beta_p > alpha_pp > alpha_p > omega_pp."""
    strict = list(zip(_PUBLISHER_CHAIN, _PUBLISHER_CHAIN[1:]))
    anchors = [(s, ">", 0) for s in PUBLISHER_SYMBOLS] if nonnegativity else []
    return ordinal.constraint_set(
        PUBLISHER_SYMBOLS,
        strict=strict,
        anchors=anchors,
        literals=[0],
    )


def default_constraints(nonnegativity: bool = True) -> ordinal.OrderingConstraintSet:
    """Both preference chains over one shared 0 literal.

    With the flag set, every symbol is anchored strictly above 0, which
    pins the 0 literal below both chains.
    """
    inst = institution_constraints(nonnegativity)
    pub = publisher_constraints(nonnegativity)
    return ordinal.OrderingConstraintSet(
        inst.symbols | pub.symbols,
        inst.strict_relations | pub.strict_relations,
        inst.equalities | pub.equalities,
        inst.anchors | pub.anchors,
        inst.literals | pub.literals,
    )


def canonical_publishing_values() -> ordinal.Instantiation:
    """The reference instantiation: each chain canonicalised on its own.

    Institution: alpha=6, alpha_star=omega_star=5, beta_star=4, beta=3,
    omega=2.  Publisher: omega_p=8 down to omega_pp=2.
    """
    values: ordinal.Instantiation = {}
    for cs in (institution_constraints(True), publisher_constraints(True)):
        (extension,) = ordinal.linear_extensions(cs, limit=4)
        values.update(ordinal.canonical_instantiation(extension))
    return values


def publishing_symbolic_3x3() -> ordinal.SymbolicGame:
    return ordinal.make_symbolic_game(
        "Institution", "Publisher", PUBLISHING_ROWS, PUBLISHING_COLS, _CELLS_3X3
    )


def publishing_symbolic_2x2() -> ordinal.SymbolicGame:
    return ordinal.make_symbolic_game(
        "Institution", "Publisher", ("OA", "H"), ("OA", "H"), _CELLS_2X2
    )


def publishing_game_3x3(symbol_values) -> NormalFormGame:
    """Concrete 3x3 publishing game from a symbol assignment."""
    return ordinal.instantiate(publishing_symbolic_3x3(), symbol_values)


def publishing_game_2x2(symbol_values) -> NormalFormGame:
    """The OA/H restriction used for the mixed-strategy analysis."""
    return ordinal.instantiate(publishing_symbolic_2x2(), symbol_values)


# ---------------------------------------------------------------------------
# publishing primitives and utilities


@dataclass(frozen=True)
class PublishingPrimitives:
    """Production, access, impact and cost primitives per business model.

    Hybrid production and access are the lambda-weighted blends of the OA
    and subscription levels.  Impact levels are direct inputs; hybrid
    impact defaults to the OA impact (the documented tie).  ``apc`` and
    ``subscription`` are optional annotations for where the costs come
    from; the cost fields themselves are the operative inputs.
    """

    p_oa: Fraction
    p_c: Fraction
    a_oa: Fraction
    a_c: Fraction
    lambda_share: Fraction
    impact_oa: Fraction
    impact_c: Fraction
    cost_oa: Fraction
    cost_c: Fraction
    cost_h: Fraction
    impact_h: Fraction | None = None
    phi: Fraction = Fraction(1, 2)
    apc: Fraction | None = None
    subscription: Fraction | None = None
    notoriety_note: str = ""

    def __post_init__(self):
        exact = {
            name: as_payoff(getattr(self, name))
            for name in (
                "p_oa",
                "p_c",
                "a_oa",
                "a_c",
                "lambda_share",
                "impact_oa",
                "impact_c",
                "cost_oa",
                "cost_c",
                "cost_h",
                "phi",
            )
        }
        for name, value in exact.items():
            object.__setattr__(self, name, value)
        object.__setattr__(
            self,
            "impact_h",
            exact["impact_oa"] if self.impact_h is None else as_payoff(self.impact_h),
        )
        for name in ("apc", "subscription"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_payoff(value))
        if not 0 < self.lambda_share < Fraction(1, 2):
            raise DomainError("lambda_share must lie in (0, 1/2)")
        if not 0 <= self.phi <= 1:
            raise DomainError("phi must lie in [0, 1]")
        if not self.p_oa > self.p_h > self.p_c:
            raise DomainError("production must satisfy p_oa > p_h > p_c")
        if not self.a_oa > self.a_h > self.a_c:
            raise DomainError("access must satisfy a_oa > a_h > a_c")
        if not self.cost_h > self.cost_c > self.cost_oa:
            raise DomainError("costs must satisfy cost_h > cost_c > cost_oa")
        if not self.impact_oa > self.impact_c:
            raise DomainError("impact must satisfy impact_oa > impact_c")

    @property
    def p_h(self) -> Fraction:
        return self.lambda_share * self.p_oa + (1 - self.lambda_share) * self.p_c

    @property
    def a_h(self) -> Fraction:
        return self.lambda_share * self.a_oa + (1 - self.lambda_share) * self.a_c

    def impact(self, model: str) -> Fraction:
        return {"OA": self.impact_oa, "C": self.impact_c, "H": self.impact_h}[
            _check_model(model)
        ]


def _check_model(model: str) -> str:
    if model not in ("OA", "C", "H"):
        raise DomainError(f"unknown business model {model!r}")
    return model


def institution_utility(primitives: PublishingPrimitives, model: str) -> Fraction:
    """Exact institution payoff for one business model.

    Warns with ConsistencyWarning when the three models' payoffs violate
    the documented institution chain (OA above C above H).
    """
    _check_model(model)
    p = primitives

    def value(m: str) -> Fraction:
        if m == "OA":
            return p.p_oa + p.a_oa + p.impact_oa - p.cost_oa
        if m == "C":
            return p.p_c + p.a_c + p.impact_c - p.cost_c
        return (
            p.lambda_share * (p.p_oa + p.a_oa)
            + (1 - p.lambda_share) * (p.p_c + p.a_c)
            + p.impact_h
            - p.cost_h
        )

    triple = {m: value(m) for m in ("OA", "C", "H")}
    if not triple["OA"] > triple["C"] > triple["H"]:
        warnings.warn(
            "institution utilities violate the OA > C > H preference chain: "
            f"{triple}",
            ConsistencyWarning,
            stacklevel=2,
        )
    return triple[model]


# ---------------------------------------------------------------------------
# publisher ledger and profit


@dataclass(frozen=True)
class JournalRecord:
    journal: str
    model: str
    submissions: int
    published: int
    price: Fraction
    fixed_cost: Fraction
    unit_cost: Fraction

    def __post_init__(self):
        _check_model(self.model)
        for name in ("price", "fixed_cost", "unit_cost"):
            object.__setattr__(self, name, as_payoff(getattr(self, name)))
        if self.published < 0 or self.submissions < self.published:
            raise DomainError("need submissions >= published >= 0")
        if self.price < 0 or self.fixed_cost < 0 or self.unit_cost < 0:
            raise DomainError("prices and costs must be nonnegative")


@dataclass(frozen=True)
class PublisherLedger:
    records: tuple[JournalRecord, ...]

    def __post_init__(self):
        keys = [(r.journal, r.model) for r in self.records]
        if len(set(keys)) != len(keys):
            raise DomainError("duplicate (journal, model) record")

    def record(self, journal: str, model: str) -> JournalRecord:
        for r in self.records:
            if r.journal == journal and r.model == model:
                return r
        raise DomainError(f"no record for journal {journal!r} under model {model!r}")

    def models_covered(self) -> frozenset[str]:
        return frozenset(r.model for r in self.records)


def publisher_profit(ledger: PublisherLedger, journal: str, model: str) -> Fraction:
    """published * price minus fixed cost and per-submission variable cost.

    Variable cost is linear in submissions, rejected manuscripts included,
    since rejections also generate processing work.
    """
    r = ledger.record(journal, _check_model(model))
    return r.published * r.price - (r.fixed_cost + r.unit_cost * r.submissions)


def publisher_utility(
    ledger: PublisherLedger, primitives: PublishingPrimitives, model: str
) -> Fraction:
    """Profit summed over the model's journals plus the model's impact.

    Warns when all three models are covered and the resulting triple
    violates the publisher chain (H above C above OA).
    """
    _check_model(model)

    def value(m: str) -> Fraction:
        return (
            sum(
                publisher_profit(ledger, r.journal, m)
                for r in ledger.records
                if r.model == m
            )
            + primitives.impact(m)
        )

    if ledger.models_covered() >= {"OA", "C", "H"}:
        triple = {m: value(m) for m in ("OA", "C", "H")}
        if not triple["H"] > triple["C"] > triple["OA"]:
            warnings.warn(
                "publisher utilities violate the H > C > OA preference chain: "
                f"{triple}",
                ConsistencyWarning,
                stacklevel=2,
            )
    return value(model)


# ---------------------------------------------------------------------------
# researcher reputation game (symmetric 2x2)


@dataclass(frozen=True)
class HanauskeParams:
    """Reputation game parameters: base r, loss alpha, gain beta, bonus delta."""

    r: Fraction
    alpha: Fraction
    beta: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("r", "alpha", "beta", "delta"):
            object.__setattr__(self, name, as_payoff(getattr(self, name)))
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be nonnegative")


HANAUSKE_STRATEGIES = ("O", "∅")


class HanauskeRegime(Enum):
    DEFECT_DOMINANT = "defect_dominant"
    STAG_HUNT = "stag_hunt"
    DEGENERATE = "degenerate"


def hanauske_game(params: HanauskeParams) -> NormalFormGame:
    """Symmetric 2x2 open-access reputation game."""
    r, a, b, d = params.r, params.alpha, params.beta, params.delta
    return make_game(
        "Researcher A",
        "Researcher B",
        HANAUSKE_STRATEGIES,
        HANAUSKE_STRATEGIES,
        [
            [(r + d, r + d), (r - a, r + b)],
            [(r + b, r - a), (r, r)],
        ],
    )


def hanauske_regime(params: HanauskeParams) -> HanauskeRegime:
    """Defect-dominant when beta > delta, stag hunt when delta > beta.

    Boundary ties (beta = delta, or alpha = 0) are reported degenerate.
    """
    if params.alpha == 0 or params.beta == params.delta:
        return HanauskeRegime.DEGENERATE
    if params.beta > params.delta:
        return HanauskeRegime.DEFECT_DOMINANT
    return HanauskeRegime.STAG_HUNT


# ---------------------------------------------------------------------------
# author vs publisher oscillation game (asymmetric 2x2)


@dataclass(frozen=True)
class HabermannParams:
    """Author/publisher game: reputation R, loss r, impact I with drop tau,
    open-model expenditure L, subscription/APC price G, excess profit P."""

    R: Fraction
    r: Fraction
    I: Fraction
    tau: Fraction
    L: Fraction
    G: Fraction
    P: Fraction

    def __post_init__(self):
        for name in ("R", "r", "I", "tau", "L", "G", "P"):
            object.__setattr__(self, name, as_payoff(getattr(self, name)))
        if not self.R > 0:
            raise DomainError("R must be positive")
        if not 0 < self.r < self.R:
            raise DomainError("need 0 < r < R")
        if not 0 < self.tau < self.I:
            raise DomainError("need 0 < tau < I")
        if not (self.L > 0 and self.G > 0 and self.P > 0):
            raise DomainError("L, G and P must be positive")


def habermann_game(params: HabermannParams) -> NormalFormGame:
    """Rows s1/s2 for the author, columns p1/p2 for the publisher."""
    R, r, I, tau, L, G, P = (
        params.R,
        params.r,
        params.I,
        params.tau,
        params.L,
        params.G,
        params.P,
    )
    half_l = L / 2
    return make_game(
        "Author",
        "Publisher",
        ("s1", "s2"),
        ("p1", "p2"),
        [
            [((R - r) + I - half_l - G, G + I - half_l), ((R - r) + I - L, 0)],
            [(R + (I - tau) - G, G + (I - tau) - L), (R + (I - tau) - G - P, G + (I - tau) + P)],
        ],
    )


# ---------------------------------------------------------------------------
# signalling model (author quality, OA as signal)


@dataclass(frozen=True)
class BesancenotParams:
    """Signalling-model primitives.

    ``lambda_w`` is the perceived-quality weight and is distinct from the
    hybrid OA share used by PublishingPrimitives even though both roles
    are written with the same letter elsewhere; likewise ``phi`` here is
    the frequency of OA-opting authors.  Beliefs are supplied, not solved.
    """

    mu: Fraction
    theta_h: Fraction
    theta_l: Fraction
    lambda_w: Fraction
    delta_a: Fraction
    delta_t: Fraction
    c: Fraction
    phi: Fraction
    belief_a: Fraction
    belief_t: Fraction

    def __post_init__(self):
        for name in (
            "mu",
            "theta_h",
            "theta_l",
            "lambda_w",
            "delta_a",
            "delta_t",
            "c",
            "phi",
            "belief_a",
            "belief_t",
        ):
            object.__setattr__(self, name, as_payoff(getattr(self, name)))
        if not 0 < self.mu < Fraction(1, 2):
            raise DomainError("mu must lie in (0, 1/2)")
        if not self.theta_h > self.theta_l > 0:
            raise DomainError("need theta_h > theta_l > 0")
        if not 0 < self.lambda_w < Fraction(1, 2):
            raise DomainError("lambda_w must lie in (0, 1/2)")
        if not self.delta_a > self.delta_t > 0:
            raise DomainError("need delta_a > delta_t > 0")
        if not self.c > 0:
            raise DomainError("c must be positive")
        if not 0 <= self.phi <= 1:
            raise DomainError("phi must lie in [0, 1]")


def besancenot_utility(params: BesancenotParams, author_type: str, strategy: str) -> Fraction:
    """Author payoff: readership times blended quality, minus the APC if OA."""
    if author_type not in ("H", "L"):
        raise DomainError(f"author type must be H or L, got {author_type!r}")
    if strategy not in ("A", "T"):
        raise DomainError(f"strategy must be A or T, got {strategy!r}")
    theta = params.theta_h if author_type == "H" else params.theta_l
    if strategy == "A":
        readership, belief, fee = params.delta_a, params.belief_a, params.c
    else:
        readership, belief, fee = params.delta_t, params.belief_t, Fraction(0)
    return readership * ((1 - params.lambda_w) * theta + params.lambda_w * belief) - fee


def _expected_theta(params: BesancenotParams) -> Fraction:
    return params.mu * params.theta_h + (1 - params.mu) * params.theta_l


def besancenot_revenue(
    params: BesancenotParams, equilibrium_id: int, as_corrected: bool = False
) -> Fraction:
    """Publisher revenue at one of the five equilibria, exactly as printed.

    The second hybrid formula multiplies the traditional-income term by
    (1 + phi) in the source table even though the general revenue formula
    uses (1 - phi); ``as_corrected`` switches to the latter.
    """
    p = params
    if equilibrium_id == 1:
        return p.c * p.mu + (1 - p.mu) * p.theta_l
    if equilibrium_id == 2:
        return p.c
    if equilibrium_id == 3:
        return _expected_theta(p)
    if equilibrium_id == 4:
        denominator = p.c - (p.delta_a - p.delta_t) * p.theta_l
        if denominator == 0:
            raise ZeroDivisionError(
                "hybrid revenue formula has a pole at c = (delta_a - delta_t) * theta_l"
            )
        return p.theta_l - p.mu * p.lambda_w * p.delta_a * (p.theta_h - p.theta_l) * (
            (p.theta_l - p.c) / denominator
        )
    if equilibrium_id == 5:
        weight = (1 - p.phi) if as_corrected else (1 + p.phi)
        return p.phi * p.c + weight * _expected_theta(p)
    raise DomainError(f"equilibrium id must be 1..5, got {equilibrium_id}")


_JOURNAL_PREFERENCES = {
    "Leading": frozenset({1}),
    "SpecializedGood": frozenset({1, 2}),
    "SecondTier": frozenset({1, 3}),
}


def besancenot_preferences(journal_type: str) -> frozenset[int]:
    """Preferred equilibria per journal type, verbatim from the summary table."""
    try:
        return _JOURNAL_PREFERENCES[journal_type]
    except KeyError:
        raise DomainError(f"unknown journal type {journal_type!r}") from None
