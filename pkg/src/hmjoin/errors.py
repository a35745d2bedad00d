"""Exception hierarchy shared across the package."""


class HmJoinError(Exception):
    """Base class for every error raised by this package."""


class InvalidParametersError(HmJoinError, ValueError):
    """A numeric or structural parameter is out of its documented range."""


class SizeMismatchError(HmJoinError, ValueError):
    """Matrix, list, or map dimensions do not line up."""


class InexactDivisionError(HmJoinError, ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class NonSymmetricInputError(HmJoinError, ValueError):
    """The operation needs a symmetric matrix (real spectrum, orthogonal
    eigenprojections) and the input is not symmetric."""


class SpecValidationError(HmJoinError, ValueError):
    """A spec document failed validation.

    The `pointer` attribute holds a JSON-pointer path to the offending
    field ("" for document-level problems).
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '<document>'}: {message}")
        self.pointer = pointer
        self.message = message


class BlockFactorizationError(HmJoinError, ArithmeticError):
    """The block path and the direct path disagree: the characteristic
    polynomial computed from factor data does not match the one computed
    from the assembled matrix."""


class CarryForwardError(HmJoinError, ArithmeticError):
    """An observed eigenvalue multiplicity in the join fell below its
    guaranteed carry-forward bound."""


class HypothesisNotMetError(HmJoinError, ValueError):
    """A cospectral-construction hypothesis check failed; the message names
    the first violated condition."""


class TheoremViolationError(HmJoinError, ArithmeticError):
    """All stated hypotheses hold, yet the concluded identity fails on the
    instance (the designated charpolys differ)."""


class TooLargeError(HmJoinError, ValueError):
    """The input exceeds a documented size cap for an exact algorithm."""
