"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for every error raised by this package."""


class DomainError(GeometryError):
    """An argument lies outside the domain of a function (pole, antipode, ...)."""


class InvalidInputError(GeometryError):
    """A precondition on the inputs is violated beyond tolerance."""


class NotOnSurfaceError(GeometryError):
    """A raw vector cannot be projected onto the requested sheet."""


class DegenerateCurveError(GeometryError):
    """The curve has (numerically) vanishing speed somewhere."""


class NotStronglyConvexError(GeometryError):
    """An operation requiring a strongly convex curve got one that is not."""


class UnsupportedCurveError(GeometryError):
    """The curve is outside the class handled here (e.g. flat stretches of rho)."""


class SingularPointError(GeometryError):
    """Evaluation requested at a singular point of the evolute."""


class ResolutionError(GeometryError):
    """Sampling is too coarse for a topological quantity to be trusted."""


class BasePointError(GeometryError):
    """The base point of the polar area form is unusable for this path."""


class CurveFileError(GeometryError):
    """A curve or report file could not be parsed."""
