class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class DivergenceError(ArithmeticError):
    """A moment, mass or integral that must be finite came out infinite."""


class WellDefinednessError(DivergenceError):
    """The integral defining the integral operator does not converge."""
