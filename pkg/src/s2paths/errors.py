"""Exception types shared across the library."""


class S2PathsError(Exception):
    """Base class for all library errors."""


class DomainError(S2PathsError):
    """Input lies outside the mathematically valid domain of an operation."""


class DivergenceError(S2PathsError):
    """A prefactor or integrand diverges at the requested point."""


class ConsistencyError(S2PathsError):
    """An elastica specification violates the winding/take-off constraint."""


class ConvergenceError(S2PathsError):
    """An iterative solve failed to reach its tolerance."""


class DegenerateError(S2PathsError):
    """A curve sample coincides with the torsion-plane axis."""


class NonFiniteError(S2PathsError):
    """A quadrature node produced a non-finite integrand value."""
