"""Exception types shared across the package."""


class GalScaffoldError(Exception):
    """Base class for all package errors."""


class PrecisionExhausted(GalScaffoldError):
    """A query cannot be answered inside the known precision window."""


class NotFullyRamified(GalScaffoldError):
    """The reduced Artin-Schreier data does not give a fully ramified extension."""


class DegenerateData(GalScaffoldError):
    """The two Artin-Schreier classes do not span a 2-dimensional space."""


class DecompositionStall(GalScaffoldError):
    """Leading-term elimination failed to make progress."""


class HypothesisViolated(GalScaffoldError):
    """An operation needs the scaffold hypotheses and they do not hold."""
