"""Exception types shared across the toolkit."""


class GameError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(GameError):
    """Payoff matrix shape disagrees with the declared strategy sets."""


class DuplicateLabel(GameError):
    """A player's strategy labels are not unique."""


class IndexOutOfBounds(GameError, IndexError):
    """A strategy or profile index is outside the game."""


class ShapeError(GameError):
    """The game has the wrong shape for the requested operation."""


class DomainError(GameError, ValueError):
    """Parameters violate the model's domain constraints."""


class MissingSymbol(GameError, KeyError):
    """An instantiation does not cover a symbol used by the game."""


class ParseError(GameError, ValueError):
    """Malformed scenario or constraint text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConstraintError(GameError):
    """An ordering constraint set is contradictory."""


class CycleDetected(ConstraintError):
    def __init__(self, path):
        super().__init__("ordering cycle: " + " > ".join(str(n) for n in path))
        self.path = tuple(path)


class EqualityStrictConflict(ConstraintError):
    def __init__(self, pair):
        super().__init__(
            f"{pair[0]} and {pair[1]} are tied but also strictly ordered"
        )
        self.pair = tuple(pair)


class ExtensionLimitExceeded(GameError):
    """Linear-extension enumeration exceeded the configured limit."""


class UnknownClaim(GameError, KeyError):
    """No registered audit claim has the requested id."""
