"""Scenario files: the JSON schema the command line consumes and emits.

A scenario is either a concrete game (payoff matrix of exact rationals,
serialised as ints or "p/q" strings) or a symbolic game (cells name
payoff symbols or literals, plus a constraints block in the one-relation-
per-line syntax).  Options carry the analysis knobs.  Emission is
canonical, so parse(emit(x)) == x and identical inputs give byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import models, ordinal
from .errors import ParseError
from .game_core import (
    DominanceKind,
    NormalFormGame,
    PlayerOrder,
    as_payoff,
    make_game,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ScenarioOptions:
    ieds_kind: str = "weak"  # weak | strict
    ieds_order: str = "row_first"  # row_first | col_first | alternating
    nonnegativity: bool = True
    seed: int = 0

    def ieds_policy(self):
        from .game_core import IedsPolicy

        return IedsPolicy(
            DominanceKind(self.ieds_kind), PlayerOrder(self.ieds_order)
        )


@dataclass(frozen=True)
class Scenario:
    kind: str  # concrete | symbolic
    name: str | None = None
    game: NormalFormGame | None = None
    symbolic: ordinal.SymbolicGame | None = None
    constraints: ordinal.OrderingConstraintSet | None = None
    options: ScenarioOptions = field(default_factory=ScenarioOptions)


def _rational_str(value: Fraction) -> str:
    return str(value)


def _cell_entry_str(entry) -> str:
    return entry if isinstance(entry, str) else _rational_str(entry)


def _parse_cell_entry(token: str, lineno_hint: str):
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str):
        raise ParseError(f"{lineno_hint}: cell entry {token!r} must be a string or int")
    if token.isidentifier():
        return token
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{lineno_hint}: bad cell entry {token!r}") from None


def emit_scenario(scenario: Scenario) -> str:
    """Canonical JSON text for a scenario."""
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "kind": scenario.kind,
    }
    if scenario.name:
        doc["name"] = scenario.name
    if scenario.kind == "concrete":
        game = scenario.game
        doc["row_player"] = game.row_player_label
        doc["col_player"] = game.col_player_label
        doc["row_strategies"] = list(game.row_strategies)
        doc["col_strategies"] = list(game.col_strategies)
        doc["payoffs"] = [
            [[_rational_str(a), _rational_str(b)] for a, b in row]
            for row in game.payoffs
        ]
    else:
        symbolic = scenario.symbolic
        doc["row_player"] = symbolic.row_player_label
        doc["col_player"] = symbolic.col_player_label
        doc["row_strategies"] = list(symbolic.row_strategies)
        doc["col_strategies"] = list(symbolic.col_strategies)
        doc["cells"] = [
            [[_cell_entry_str(a), _cell_entry_str(b)] for a, b in row]
            for row in symbolic.cells
        ]
        doc["constraints"] = ordinal.format_constraints(scenario.constraints)
    doc["options"] = {
        "ieds_kind": scenario.options.ieds_kind,
        "ieds_order": scenario.options.ieds_order,
        "nonnegativity": scenario.options.nonnegativity,
        "seed": scenario.options.seed,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_scenario(text: str) -> Scenario:
    """Parse scenario JSON, raising ParseError with context on bad input."""
    if not text.strip():
        raise ParseError("empty scenario")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")
    kind = doc.get("kind")
    if kind not in ("concrete", "symbolic"):
        raise ParseError(f"kind must be concrete or symbolic, got {kind!r}")

    options_doc = doc.get("options", {})
    if not isinstance(options_doc, dict):
        raise ParseError("options must be an object")
    try:
        options = ScenarioOptions(
            ieds_kind=str(options_doc.get("ieds_kind", "weak")),
            ieds_order=str(options_doc.get("ieds_order", "row_first")),
            nonnegativity=bool(options_doc.get("nonnegativity", True)),
            seed=int(options_doc.get("seed", 0)),
        )
        DominanceKind(options.ieds_kind)
        PlayerOrder(options.ieds_order)
    except ValueError as exc:
        raise ParseError(f"bad options: {exc}") from None

    for key in ("row_player", "col_player", "row_strategies", "col_strategies"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")

    if kind == "concrete":
        if "payoffs" not in doc:
            raise ParseError("concrete scenario needs a payoffs matrix")
        try:
            matrix = [
                [(as_payoff(a), as_payoff(b)) for a, b in row]
                for row in doc["payoffs"]
            ]
            game = make_game(
                doc["row_player"],
                doc["col_player"],
                doc["row_strategies"],
                doc["col_strategies"],
                matrix,
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad payoffs: {exc}") from None
        except Exception as exc:  # dimension and label errors carry context
            raise ParseError(str(exc)) from None
        return Scenario("concrete", doc.get("name"), game=game, options=options)

    if "cells" not in doc or "constraints" not in doc:
        raise ParseError("symbolic scenario needs cells and constraints")
    cells = [
        [
            (
                _parse_cell_entry(pair[0], f"cell ({r},{c})"),
                _parse_cell_entry(pair[1], f"cell ({r},{c})"),
            )
            for c, pair in enumerate(row)
        ]
        for r, row in enumerate(doc["cells"])
    ]
    try:
        symbolic = ordinal.make_symbolic_game(
            doc["row_player"],
            doc["col_player"],
            doc["row_strategies"],
            doc["col_strategies"],
            cells,
        )
    except Exception as exc:
        raise ParseError(str(exc)) from None
    cell_literals = [
        entry
        for row in symbolic.cells
        for cell in row
        for entry in cell
        if isinstance(entry, Fraction)
    ]
    constraints = ordinal.parse_constraints(
        str(doc["constraints"]), extra_literals=cell_literals
    )
    missing = symbolic.symbols_used() - constraints.symbols
    if missing:
        raise ParseError(f"cells use symbols not in constraints: {sorted(missing)}")
    ordinal.validate(constraints)
    return Scenario(
        "symbolic",
        doc.get("name"),
        symbolic=symbolic,
        constraints=constraints,
        options=options,
    )


# ---------------------------------------------------------------------------
# bundled scenarios


def _concrete(name: str, game: NormalFormGame, **options) -> Scenario:
    return Scenario("concrete", name, game=game, options=ScenarioOptions(**options))


def _besancenot_default_game() -> NormalFormGame:
    """Two author types pick OA (A) or traditional (T) simultaneously.

    Separating beliefs and an APC of 7/4 make A dominant for the high type
    and T dominant for the low type, so the unique equilibrium separates.
    """
    params = models.BesancenotParams(
        mu=Fraction(3, 10),
        theta_h=2,
        theta_l=1,
        lambda_w=Fraction(1, 4),
        delta_a=2,
        delta_t=1,
        c=Fraction(7, 4),
        phi=Fraction(3, 10),
        belief_a=2,
        belief_t=1,
    )
    strategies = ("A", "T")
    matrix = [
        [
            (
                models.besancenot_utility(params, "H", row),
                models.besancenot_utility(params, "L", col),
            )
            for col in strategies
        ]
        for row in strategies
    ]
    return make_game("AuthorH", "AuthorL", strategies, strategies, matrix)


def builtin_scenario(name: str) -> Scenario:
    """Named scenarios pinning the documented examples to reproducible inputs."""
    if name == "publishing_canonical":
        return _concrete(
            name,
            models.publishing_game_3x3(models.canonical_publishing_values()),
        )
    if name == "publishing_symbolic":
        return Scenario(
            "symbolic",
            name,
            symbolic=models.publishing_symbolic_3x3(),
            constraints=models.default_constraints(True),
        )
    if name == "hanauske_pd":
        return _concrete(
            name, models.hanauske_game(models.HanauskeParams(4, 1, 2, 1))
        )
    if name == "hanauske_staghunt":
        return _concrete(
            name, models.hanauske_game(models.HanauskeParams(4, 1, 1, 2))
        )
    if name == "habermann_default":
        return _concrete(
            name, models.habermann_game(models.HabermannParams(10, 2, 5, 1, 2, 3, 4))
        )
    if name == "besancenot_default":
        return _concrete(name, _besancenot_default_game())
    raise ParseError(f"unknown bundled scenario {name!r}")


BUILTIN_NAMES = (
    "publishing_canonical",
    "publishing_symbolic",
    "hanauske_pd",
    "hanauske_staghunt",
    "habermann_default",
    "besancenot_default",
)
