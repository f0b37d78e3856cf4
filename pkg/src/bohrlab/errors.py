"""Exception types shared across the package."""


class BohrError(Exception):
    """Base class for library errors."""


class DomainError(BohrError, ValueError):
    """An argument lies outside the domain of an operation."""


class SupportError(DomainError):
    """A series has a coefficient outside its declared lacunary pattern."""


class ParityError(DomainError):
    """Monomial weight degrees match neither parity case."""


class NoSignChangeError(BohrError, ArithmeticError):
    """A radius residual keeps one sign over the whole scan."""
