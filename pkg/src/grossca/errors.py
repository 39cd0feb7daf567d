"""
Exception hierarchy shared by the grossca modules.

Everything a caller can trigger with bad input derives from DomainError (and
therefore also from ValueError); the CLI turns any GrossCAError into exit code 1.
"""


class GrossCAError(Exception):
    """Root of every error raised on purpose by grossca."""


class DomainError(GrossCAError, ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedProductError(DomainError):
    """A product of terms on two different bases (e.g. 2^① · 3^①)."""


class UnsupportedAlphabetError(DomainError):
    """The operation is only defined for a particular alphabet size."""


class AlphabetMismatchError(DomainError):
    """Two operands live over different alphabets."""

    def __init__(self, left, right):
        super().__init__(f"alphabet mismatch: s={left} vs s={right}")
        self.left = left
        self.right = right


class ConfigSyntaxError(DomainError):
    """Configuration text does not follow `left=<w> core=<w|-> offset=<int> right=<w>`."""

    def __init__(self, message, token=None):
        if token is not None:
            message = f"{message}: {token!r}"
        super().__init__(message)
        self.token = token


class RuleError(DomainError):
    """A local rule table or rule number is incomplete or out of range."""


class EnumerationGuardError(DomainError):
    """Brute-force enumeration refused because the universe is too large."""


class ContractViolation(GrossCAError, AssertionError):
    """A caller broke a documented precondition that is not a user input error."""
