"""Exception hierarchy shared by all lhspec modules.

Every error carries a stable machine-readable ``code`` so the CLI can
surface failures as structured JSON.  Library code raises these directly;
nothing here depends on the rest of the package.
"""

from __future__ import annotations


class SpectralError(Exception):
    """Base class for all lhspec errors."""

    code = "error"


class DomainError(SpectralError):
    """An argument violates a documented domain constraint."""

    code = "domain_error"


class NotInAlgebra(DomainError):
    """Matrix is not in so(3,1) within tolerance."""

    code = "not_in_algebra"


class NotInGroup(DomainError):
    """Matrix is not in the identity component SO(3,1)deg within tolerance."""

    code = "not_in_group"


class NotLoxodromic(SpectralError):
    """Group element has no eigenvalue off the unit circle (no translation length)."""

    code = "not_loxodromic"


class FactorZero(SpectralError):
    """An Euler factor is exactly zero at the evaluation point."""

    code = "factor_zero"


class DivisionByZero(SpectralError):
    """A denominator Euler factor vanishes at the evaluation point."""

    code = "division_by_zero"


class UnderflowError(SpectralError):
    """Multiset subtraction would drive a multiplicity negative."""

    code = "multiset_underflow"


class IncompleteWindow(SpectralError):
    """The zero window is too small for the peeling loop to be conclusive."""

    code = "incomplete_window"


class NegativeMultiplicity(SpectralError):
    """Peeling subtraction underflowed: the input multiset is inconsistent."""

    code = "negative_multiplicity"


class AmbiguousTrace(SpectralError):
    """Two distinct (length, holonomy) pairs explain the same minimal element."""

    code = "ambiguous_trace"


class ParseError(SpectralError):
    """Malformed spectrum file or CLI literal."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ConvergenceWarning(UserWarning):
    """Evaluation requested outside the guaranteed convergence half-plane."""
