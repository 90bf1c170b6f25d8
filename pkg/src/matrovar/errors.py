"""Exception hierarchy.

Everything raised on purpose derives from :class:`MatrovarError`. The CLI maps
:class:`InputError` subclasses to exit code 2 and the rest to exit code 1.
"""


class MatrovarError(Exception):
    pass


class InputError(MatrovarError):
    """Malformed or invalid input data."""


class AxiomViolation(InputError):
    pass


class LoopError(InputError):
    pass


class RankError(InputError):
    pass


class NotPavingError(InputError):
    pass


class HyperplaneSizeError(InputError):
    pass


class ElementError(InputError, IndexError):
    pass


class GroundSetTooLarge(InputError):
    pass


class DimensionMismatch(InputError, ValueError):
    pass


class CoverageError(InputError):
    pass


class IncidenceError(InputError):
    pass


class EvaluationError(InputError):
    pass


class DomainError(MatrovarError):
    """Operation undefined for this kind of matroid (wrong rank, not paving...)."""


class PreconditionError(MatrovarError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GenericityFailure(MatrovarError):
    """Random sampling kept landing on a degenerate point; raise ``bound``."""
