"""
Exceptions raised by mzqfi.

Every error derives from `MzqfiError`. Errors that signal a bad argument also
derive from `ValueError` so callers can treat them as ordinary validation
failures.
"""


class MzqfiError(Exception):
    """Base class for all mzqfi errors."""


class SpecialFunctionDomainError(MzqfiError, ValueError):
    """Argument outside the domain of a special function."""


class SeriesNotConverged(MzqfiError):
    """
    A power series exhausted its term budget before meeting the tolerance.

    Attributes
    ----------
    partial_sum : float
        The sum accumulated when the budget ran out
    terms : int
        Number of terms summed
    """

    def __init__(self, message: str, partial_sum: float, terms: int):
        super().__init__(f"{message} (partial sum {partial_sum!r} after {terms} terms)")
        self.partial_sum = partial_sum
        self.terms = terms


class CutoffError(MzqfiError):
    """The Fock truncation cannot certify the requested tail tolerance."""


class OracleError(MzqfiError):
    """The truncated Fock-space simulation was used inconsistently."""


class MomentDegreeError(OracleError, ValueError):
    """A moment monomial is malformed or exceeds the supported degree."""


class DerivativeVanishes(MzqfiError):
    """The signal slope is zero at the working point, so the sensitivity diverges."""


class ConfigurationDegenerate(MzqfiError):
    """The splitter configuration makes a detection scheme blind to the phase."""


class DegenerateInputError(MzqfiError, ValueError):
    """The input state carries no photons where the operation needs some."""


class ConfigError(MzqfiError, ValueError):
    """
    Invalid run configuration.

    Attributes
    ----------
    path : str
        Dotted path of the offending field, e.g. ``states[1].xi``
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class PlotError(MzqfiError):
    """The CSV cannot be rendered as requested."""

