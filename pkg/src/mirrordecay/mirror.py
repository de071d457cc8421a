"""Two-sided, non-absorbing mirror descriptor and its derived quantities.

Side ``a`` is the half-space ``x >= 0`` (where the emitter sits), side ``b``
is ``x < 0``.  Amplitudes are real fractions; every complex phase picked up
on reflection or transmission lives in the four explicit phases:

    phi_1  reflection on side a
    phi_2  transmission from b into a
    phi_3  reflection on side b
    phi_4  transmission from a into b
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    FreeSpaceDegenerate,
    OneSidedMirror,
    OutOfRange,
    PhaseConditionViolated,
)

AMPLITUDE_TOL = 1e-12
PHASE_TOL = 1e-9

DEFAULT_PHASES = (math.pi, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class MirrorSpec:
    """Raw mirror parameters.

    Construction does not validate; use :func:`build_mirror` for a checked
    instance and :func:`validate_mirror` to inspect an arbitrary one.
    """

    r_a: float
    r_b: float
    t_a: float
    t_b: float
    phi_1: float = DEFAULT_PHASES[0]
    phi_2: float = DEFAULT_PHASES[1]
    phi_3: float = DEFAULT_PHASES[2]
    phi_4: float = DEFAULT_PHASES[3]

    @property
    def phases(self) -> tuple[float, float, float, float]:
        return (self.phi_1, self.phi_2, self.phi_3, self.phi_4)

    def swapped(self) -> "MirrorSpec":
        """The same mirror seen from the other side (labels a and b exchanged)."""
        return MirrorSpec(
            r_a=self.r_b, r_b=self.r_a, t_a=self.t_b, t_b=self.t_a,
            phi_1=self.phi_3, phi_2=self.phi_4, phi_3=self.phi_1, phi_4=self.phi_2,
        )


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ConstraintCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> ConstraintCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[ConstraintCheck]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class NormalizationPair:
    eta_a: float
    eta_b: float


@dataclass(frozen=True)
class MirrorParameter:
    xi: float


def phase_residual(phases: Sequence[float]) -> float:
    """Distance of ``phi_1 - phi_2 + phi_3 - phi_4`` from the nearest odd multiple of pi."""
    p1, p2, p3, p4 = phases
    d = math.fmod(p1 - p2 + p3 - p4 - math.pi, 2.0 * math.pi)
    d = abs(d)
    return min(d, 2.0 * math.pi - d)


def _check_fraction(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise OutOfRange(f"{name}={value!r} is outside [0, 1]")


def build_mirror(r_a: float, r_b: float, phases: Sequence[float] | None = None) -> MirrorSpec:
    """Checked constructor: transmissions are the Pythagorean complements."""
    _check_fraction("r_a", r_a)
    _check_fraction("r_b", r_b)
    if phases is None:
        phases = DEFAULT_PHASES
    phases = tuple(float(p) for p in phases)
    if len(phases) != 4:
        raise ValueError(f"expected 4 phases, got {len(phases)}")
    res = phase_residual(phases)
    if res > PHASE_TOL:
        raise PhaseConditionViolated(
            f"phi_1 - phi_2 + phi_3 - phi_4 = {phases[0] - phases[1] + phases[2] - phases[3]!r} "
            f"is {res:.3g} rad away from an odd multiple of pi"
        )
    return MirrorSpec(
        r_a=float(r_a),
        r_b=float(r_b),
        t_a=math.sqrt(1.0 - r_a * r_a),
        t_b=math.sqrt(1.0 - r_b * r_b),
        phi_1=phases[0],
        phi_2=phases[1],
        phi_3=phases[2],
        phi_4=phases[3],
    )


def validate_mirror(spec: MirrorSpec) -> ValidationReport:
    """Diagnose every mirror constraint; never raises."""
    checks = []
    try:
        amps = (spec.r_a, spec.r_b, spec.t_a, spec.t_b)
        excursion = max(max(-a, a - 1.0, 0.0) for a in amps)
        checks.append(ConstraintCheck("amplitude_range", excursion == 0.0, excursion))
        for side, r, t in (("a", spec.r_a, spec.t_a), ("b", spec.r_b, spec.t_b)):
            res = abs(r * r + t * t - 1.0)
            checks.append(ConstraintCheck(f"energy_{side}", res <= AMPLITUDE_TOL, res))
        res = phase_residual(spec.phases)
        checks.append(ConstraintCheck("phase", res <= PHASE_TOL, res))
    except (TypeError, ValueError):
        checks.append(ConstraintCheck("well_formed", False, math.inf))
    else:
        if any(math.isnan(c.residual) for c in checks):
            checks = [ConstraintCheck(c.name, False, c.residual) for c in checks]
    return ValidationReport(tuple(checks))


def _require_two_sided(spec: MirrorSpec) -> None:
    if spec.r_a == 0.0 and spec.r_b == 0.0:
        raise FreeSpaceDegenerate("r_a = r_b = 0: normalisation factors are undefined")
    if spec.r_a == 0.0 or spec.r_b == 0.0:
        raise OneSidedMirror(
            f"r_a={spec.r_a!r}, r_b={spec.r_b!r}: normalisation factor diverges"
        )


def normalization_factors(spec: MirrorSpec) -> NormalizationPair:
    _require_two_sided(spec)
    ra2, rb2 = spec.r_a**2, spec.r_b**2
    return NormalizationPair(
        eta_a=math.sqrt(1.0 + ra2 / rb2),
        eta_b=math.sqrt(1.0 + rb2 / ra2),
    )


def normalization_identity_residual(spec: MirrorSpec) -> float:
    """Worst violation of the large-distance normalisation identity on either side."""
    eta = normalization_factors(spec)
    ea2, eb2 = eta.eta_a**2, eta.eta_b**2
    res_a = abs((1.0 + spec.r_a**2) / ea2 + spec.t_b**2 / eb2 - 1.0)
    res_b = abs((1.0 + spec.r_b**2) / eb2 + spec.t_a**2 / ea2 - 1.0)
    return max(res_a, res_b)


def xi_from_reflectances(r_a, r_b):
    """Vectorised mirror parameter ``3 r_a r_b^2 / (r_a^2 + r_b^2)``.

    Defined as 0 where both amplitudes vanish (the free-space limit).
    Accepts scalars or numpy arrays.
    """
    ra = np.asarray(r_a, dtype=float)
    rb = np.asarray(r_b, dtype=float)
    den = ra * ra + rb * rb
    safe = np.where(den > 0.0, den, 1.0)
    xi = np.where(den > 0.0, 3.0 * ra * rb * rb / safe, 0.0)
    return xi if xi.ndim else float(xi)


def mirror_parameter(spec: MirrorSpec) -> MirrorParameter:
    return MirrorParameter(xi=xi_from_reflectances(spec.r_a, spec.r_b))
