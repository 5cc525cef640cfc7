"""Exact-arithmetic game theory toolkit for the open-access publishing market.

Subpackages: ``game_core`` (games, dominance, Nash, IEDS, Pareto),
``ordinal`` (ordering constraints, linear extensions, universal checks),
``mixed`` (2x2 indifference analysis and support enumeration),
``dynamics`` (best-response play and replicator shares), ``models``
(publishing and literature game generators), ``audit`` (printed-claim
verification), ``cli`` (command line).
"""

from . import audit, cli, dynamics, game_core, mixed, models, ordinal, scenarios
from .game_core import (
    DominanceKind,
    IedsPolicy,
    NormalFormGame,
    Player,
    PlayerOrder,
    StrategyProfile,
    make_game,
)

__all__ = [
    "audit",
    "cli",
    "dynamics",
    "game_core",
    "mixed",
    "models",
    "ordinal",
    "scenarios",
    "DominanceKind",
    "IedsPolicy",
    "NormalFormGame",
    "Player",
    "PlayerOrder",
    "StrategyProfile",
    "make_game",
]

__version__ = "0.1.0"
