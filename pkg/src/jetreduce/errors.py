"""Exception types shared across the package."""


class JetReduceError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(JetReduceError):
    """Syntax or symbol-resolution error, with a source position."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = "%s (at position %d)" % (message, pos)
        super().__init__(message)


class UnsupportedFormError(JetReduceError):
    """Expression is outside the exactly-decidable class."""


class NonPolynomialError(JetReduceError):
    """Expression is not polynomial in the requested variable."""


class SingularSystemError(JetReduceError):
    """Structurally singular linear system."""


class UnsupportedIntegralError(JetReduceError):
    """Integrand outside the supported rational class."""


class DegenerateSpecError(JetReduceError):
    """Operator specification produces an identically zero equation."""


class InconsistentCandidateError(JetReduceError):
    """Candidate elimination forces a contradiction (no jet-dependent I)."""


class CandidateTimeout(JetReduceError):
    """Per-candidate work exceeded its deadline."""
