"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 1); broken
internal invariants derive from :class:`InvariantViolation` (exit code 2).
"""


class ZZError(Exception):
    """Base class for every error raised by zzatlas."""


class InputError(ZZError, ValueError):
    pass


class InvariantViolation(ZZError, AssertionError):
    pass


# surface construction
class GluingError(InputError):
    """The side pairing is not a fixed-point-free involution."""


class EdgeDegreeError(InputError):
    """A vertex pair does not occur in exactly two triangles."""


class LinkError(InputError):
    """The corners at a named vertex do not close into a single cycle."""


class DisconnectedError(InputError):
    pass


class FormatError(InputError):
    """Malformed JSON input."""


class ParameterOutOfRange(InputError):
    pass


# zigzags and orientations
class EdgesNotCofacial(InputError):
    pass


class CapExceeded(InputError):
    pass


class HomogeneityUndefined(InputError):
    """Homogeneity is only defined when every face is of type I."""


class MixedFaceTypes(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class NotTypeIIFace(InputError):
    pass


# directed embeddings
class NotSimpleDigraph(InputError):
    pass


class NotEulerian(InputError):
    pass


class NotClosed2Cell(InputError):
    pass


class FaceNotDirectedCycle(InputError):
    pass


# bug traps
class OrientationUnsatisfiable(InvariantViolation):
    pass


class NoTemplateMatch(InvariantViolation):
    pass


# command line
class UsageError(InputError):
    pass


class NotStrict(InputError):
    """The map fails strict simplicial validation."""
