"""Exception and warning types shared across the toolkit."""


class MwdError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(MwdError):
    """A matrix required to be invertible is singular or near-singular."""


class NonPositiveParameter(MwdError):
    """A parameter that must be strictly positive is not."""


class GridMismatch(MwdError):
    """Operands live on incompatible grids."""


class OffGridShift(MwdError):
    """A translation is not an integer multiple of the grid step."""


class InvalidExponent(MwdError):
    """Lebesgue exponent outside [1, inf]."""


class DomainTagMismatch(MwdError):
    """Partial transform direction inconsistent with the axis domain tag."""


class NotRightRegular(MwdError):
    """Operation requires an invertible right block column."""


class NotCohenType(MwdError):
    """Operation requires a Cohen-type parameter matrix."""


class NotCohenTagged(MwdError):
    """Field lacks the Cohen parameter tag expected by the operation."""


class OrthogonalWindowPair(MwdError):
    """Reconstruction windows have (numerically) vanishing inner product."""


class ConfigError(MwdError):
    """Malformed or inconsistent run configuration."""


class ExtrapolationWarning(UserWarning):
    """Resampling requested points outside the sampled box (zero extension)."""
