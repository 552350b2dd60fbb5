"""Exception hierarchy shared by the whole package."""


class ShrubError(Exception):
    """Base class for every error raised deliberately by shrubkit."""


class DomainError(ShrubError):
    """An argument is outside an operation's documented domain."""


class ValidationError(ShrubError):
    """A structure (graph, tree, model, file) is malformed."""


class ResourceLimitError(ShrubError):
    """An input exceeds a configured exact-computation cap."""


class FormulaParseError(ShrubError):
    """A formula failed to parse.  Carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SignatureConflict(ShrubError):
    """Two leaf pairs in the same colour/level class disagree on adjacency."""

    def __init__(self, triple, pair_a, pair_b):
        i, j, lvl = triple
        super().__init__(
            f"colour pair ({i},{j}) at level {lvl}: "
            f"pair {pair_a} is an edge but pair {pair_b} is not"
        )
        self.triple = triple
        self.pair_a = pair_a
        self.pair_b = pair_b
