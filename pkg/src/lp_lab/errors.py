"""Exception hierarchy shared by all lp-lab modules."""


class LpLabError(Exception):
    """Base class for all lp-lab errors."""


class ModelValidationError(LpLabError):
    """A candidate model failed validation."""


class NonStochasticRow(ModelValidationError):
    pass


class NegativeEntry(ModelValidationError):
    pass


class DuplicateLabel(ModelValidationError):
    pass


class UnreachablePoint(ModelValidationError):
    """A sample point has probability zero under every parameter value."""


class LengthMismatch(LpLabError):
    pass


class ParameterSpaceMismatch(LpLabError):
    pass


class GroundSetMismatch(LpLabError):
    pass


class SpaceTooLarge(LpLabError):
    """Sample space exceeds the exhaustive-enumeration bound."""


class NotAncillary(LpLabError):
    pass


class NotLRelated(LpLabError):
    pass


class NotUnique(LpLabError):
    """No single finest candidate exists; carries the antichain of candidates."""

    def __init__(self, message, antichain=()):
        super().__init__(message)
        self.antichain = tuple(antichain)


class DegenerateHypothesis(LpLabError):
    pass


class EmptyHypothesis(LpLabError):
    pass


class UnknownTheta(LpLabError):
    pass
