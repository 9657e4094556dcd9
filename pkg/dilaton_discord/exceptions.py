"""
Error types raised by the toolkit.

All of them derive from ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""


class DilatonError(ValueError):
    """Base class for every error raised by dilaton_discord."""


class DomainError(DilatonError):
    """Physical parameters outside their domain (e.g. alpha >= M, |q_R| > 1)."""


class InvalidSubsystemError(DilatonError):
    """Subsystem index out of range, or an empty keep-set, in a partial trace."""


class ContractViolationError(DilatonError):
    """An input breaks an operation's precondition (non-Hermitian, non-unitary, ...)."""


class DegenerateBranchError(DilatonError):
    """A measurement outcome has probability below the degeneracy threshold."""

    def __init__(self, probability: float):
        super().__init__(f"Measurement branch probability {probability:.3e} is degenerate")
        self.probability = probability


class NoCrossingError(DilatonError):
    """C(B|A) - C(A|B) keeps its sign on the requested alpha interval."""


class UsageError(DilatonError):
    """Invalid command-line configuration."""
