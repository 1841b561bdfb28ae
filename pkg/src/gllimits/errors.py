"""Exception hierarchy shared by every module of the package."""


class AlgebraError(ValueError):
    """Base class for all domain errors raised by gllimits."""


class ParseError(AlgebraError):
    pass


class UnboundVariable(AlgebraError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} has no assigned value")
        self.name = name


class NotQuadratic(AlgebraError):
    pass


class NonInvertible(AlgebraError):
    pass


class UnsupportedSlot(AlgebraError):
    pass


class LevelMismatch(AlgebraError):
    pass


class SpaceMismatch(AlgebraError):
    pass


class NotEquivariant(AlgebraError):
    pass


class PoleAtZero(AlgebraError):
    """The Laurent point has a nonzero coefficient at a negative exponent."""

    def __init__(self, min_exponent):
        super().__init__(f"pole of order {-min_exponent} at t=0")
        self.min_exponent = min_exponent


class InvalidSplitting(AlgebraError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class BasisMissing(AlgebraError):
    pass


class ResourceLimit(RuntimeError):
    """A step budget was exhausted; no result is returned."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: step budget {budget} exhausted")
        self.budget = budget


class OracleTimeout(ResourceLimit):
    pass
