"""Exception hierarchy.

``InvalidInput`` subclasses map to CLI exit code 2 and ``Unsupported``
subclasses to exit code 3.
"""


class HopfPfaffError(Exception):
    pass


class InvalidInput(HopfPfaffError, ValueError):
    pass


class Unsupported(HopfPfaffError):
    pass


class DimensionMismatch(InvalidInput):
    pass


class NotMonomialCharacter(InvalidInput):
    """The character value is not a monomial in the eigenvalues."""


class ZeroForm(InvalidInput):
    pass


class DegenerateGenerators(InvalidInput):
    pass


class SymbolicModeUnsupported(Unsupported):
    pass


class SymbolicResonantUnsupported(Unsupported):
    pass


class GeneralResonantUnsupported(Unsupported):
    pass


class WrongClass(Unsupported):
    pass
