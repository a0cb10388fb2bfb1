"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`SyminvError`, so callers (and the CLI) can catch one type.
"""


class SyminvError(Exception):
    pass


class Singular(SyminvError):
    """A matrix that must be invertible has zero determinant."""


class NotSymmetric(SyminvError):
    pass


class NotSkew(SyminvError):
    pass


class OddDimension(SyminvError):
    pass


class DimensionMismatch(SyminvError):
    pass


class ShapeMismatch(SyminvError):
    pass


class IndexOutOfRange(SyminvError):
    pass


class GenerationFailed(SyminvError):
    pass


class DegenerateForm(SyminvError):
    """A form in an operator tuple fails the non-degeneracy gate of its mode.

    ``index`` is the position of the offending k-form (0-based) and
    ``condition`` names the failed requirement.
    """

    def __init__(self, index, condition):
        super().__init__(f"form q{index + 1} is degenerate: {condition}")
        self.index = index
        self.condition = condition


class ModeMismatch(SyminvError):
    pass


class DegenerateSymbol(SyminvError):
    pass


class ParseError(SyminvError):
    pass


class InvariantViolation(SyminvError):
    pass
