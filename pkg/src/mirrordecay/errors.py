"""Exception hierarchy shared by the library and the CLI."""


class MirrorDecayError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRange(MirrorDecayError, ValueError):
    pass


class PhaseConditionViolated(MirrorDecayError, ValueError):
    pass


class OneSidedMirror(MirrorDecayError, ValueError):
    """Exactly one of the two reflection amplitudes is zero."""


class FreeSpaceDegenerate(MirrorDecayError, ValueError):
    """Both reflection amplitudes are zero; there is no mirror."""


class NonMonotonicGrid(MirrorDecayError, ValueError):
    pass


class QuadratureNotConverged(MirrorDecayError, ArithmeticError):
    pass


class GridOverrun(MirrorDecayError):
    """A packet's support left the simulation grid."""


class SideMismatch(MirrorDecayError, ValueError):
    """A packet's support is not on the side its label claims."""


class ScatteringIncomplete(MirrorDecayError):
    """Some packet still straddles the mirror plane at the audit time."""


class IoFailure(MirrorDecayError, OSError):
    pass


class ConfigError(MirrorDecayError, ValueError):
    pass
