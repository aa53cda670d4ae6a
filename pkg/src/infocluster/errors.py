"""Exception hierarchy shared by every module."""


class InfoClusterError(Exception):
    """Base class for all library errors."""


class GroundTooLarge(InfoClusterError):
    pass


class GroundMismatch(InfoClusterError):
    pass


class EmptyBlock(InfoClusterError):
    pass


class UnknownVariable(InfoClusterError, KeyError):
    pass


class EmptySet(InfoClusterError, ValueError):
    pass


class OverlappingFamily(InfoClusterError, ValueError):
    pass


class SubsetTooSmall(InfoClusterError, ValueError):
    pass


class BadSize(InfoClusterError, ValueError):
    pass


class ModelError(InfoClusterError, ValueError):
    """A model document or source definition is structurally invalid."""


class PreconditionViolated(InfoClusterError):
    pass


class NoUniqueFinest(PreconditionViolated):
    """Float ties left the meet of the optimal partitions non-optimal."""


class FloatEqualityAmbiguous(PreconditionViolated):
    pass


class ScaleOverflow(InfoClusterError, OverflowError):
    """Common denominator too large for exact int64 kernels."""
