"""Spontaneous decay of a dipole near a two-sided semi-transparent mirror."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .mirror import (
    DEFAULT_PHASES,
    MirrorParameter,
    MirrorSpec,
    NormalizationPair,
    ValidationReport,
    build_mirror,
    mirror_parameter,
    normalization_factors,
    normalization_identity_residual,
    validate_mirror,
)
from .decay import (
    DecayCurve,
    DecayResult,
    EmitterConfig,
    contact_limit,
    decay_curve,
    decay_rate,
    relative_decay_rate,
)
from .oracle import (
    ImagePairConfig,
    Orientation,
    QuadratureSettings,
    oracle_relative_decay,
    pair_power_ratio,
)
from .wavepacket import (
    EnergyLedger,
    FieldState,
    Grid,
    WavePacket,
    energy_audit,
    gaussian_packet,
    propagate_free,
    scatter,
    total_energy,
)
