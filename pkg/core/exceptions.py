"""
⚠️ Tailcert Error Hierarchy
==========================

Every engine failure derives from TailcertError. The command-line front end
maps the classes to its exit-code contract through ``exit_code``.
"""

from typing import Optional


class TailcertError(Exception):
    """Base class for all engine errors."""

    exit_code = 1


class PolynomialError(TailcertError, ValueError):
    """Invalid polynomial input (zero polynomial, zero constant term, ...)."""


class DegreeCapExceeded(TailcertError):
    """A factorization or exact sum would exceed the configured degree cap."""

    exit_code = 4

    def __init__(self, degree: int, cap: int, what: str = "polynomial"):
        super().__init__(f"{what} degree {degree} exceeds the cap {cap}")
        self.degree = degree
        self.cap = cap


class NotSquarefreeError(PolynomialError):
    """Root isolation was handed a polynomial with repeated roots."""


class CertificationError(TailcertError):
    """Certification did not succeed at the current working precision."""


class RootSelectionError(TailcertError):
    """A region or enclosure does not designate exactly one root."""


class NotAlgebraicIntegerError(TailcertError):
    """An operation that is only claimed for algebraic integers got something else."""


class EqualNumbersError(TailcertError):
    """Separation bound requested for two equal numbers."""


class ConjugatePairError(TailcertError):
    """Separation bound requested for two distinct conjugates."""


class SpecFormatError(TailcertError, ValueError):
    """Malformed sequence specification or CLI parameter."""

    exit_code = 2


class AssumptionNotVerified(TailcertError):
    """A tail estimator's declared assumption is missing or fails on the prefix."""


class HypothesisViolation(TailcertError):
    """A growth-theorem hypothesis is strictly refuted (or undecidable) on the prefix."""

    def __init__(self, hypothesis: str, index: Optional[int] = None, detail: str = ""):
        where = f" at n={index}" if index is not None else ""
        message = f"hypothesis '{hypothesis}' violated{where}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.hypothesis = hypothesis
        self.index = index
        self.detail = detail
