"""Relative spontaneous decay rate of a dipole in front of a two-sided mirror.

With ``u = 2 k x`` the round-trip phase between atom and mirror:

    Gamma_mirr / Gamma_free = 1 - xi (cos u / u^2 - sin u / u^3)(1 + mu)
                                - xi (sin u / u)(1 - mu)

Both bracketed functions are finite at ``u = 0`` but the first one loses
every significant digit to cancellation there, so small arguments go
through Maclaurin series instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonMonotonicGrid, OutOfRange
from .mirror import MirrorSpec, mirror_parameter

#: below this ``u`` the series branch is used
SERIES_THRESHOLD = 0.05
XI_MAX = 1.5
_SERIES_EPS = 1e-16


@dataclass(frozen=True)
class EmitterConfig:
    k: float
    x: float
    mu: float
    gamma_free: float = 1.0

    def __post_init__(self):
        if not self.k > 0:
            raise OutOfRange(f"k must be > 0, got {self.k!r}")
        if not self.x >= 0:
            raise OutOfRange(f"x must be >= 0, got {self.x!r}")
        _check_mu(self.mu)
        if not self.gamma_free > 0:
            raise OutOfRange(f"gamma_free must be > 0, got {self.gamma_free!r}")


@dataclass(frozen=True)
class DecayResult:
    ratio: float
    gamma_mirr: float
    u: float


@dataclass(frozen=True)
class DecayCurve:
    xi: float
    mu: float
    kx: np.ndarray
    u: np.ndarray
    ratio: np.ndarray

    def __len__(self) -> int:
        return len(self.kx)


def _check_mu(mu) -> None:
    m = np.asarray(mu, dtype=float)
    if not np.all((m >= 0.0) & (m <= 1.0)):
        raise OutOfRange(f"mu must lie in [0, 1], got {mu!r}")


def _check_xi(xi) -> None:
    x = np.asarray(xi, dtype=float)
    if not np.all((x >= 0.0) & (x <= XI_MAX)):
        raise OutOfRange(f"xi must lie in [0, {XI_MAX}], got {xi!r}")


def _check_u(u) -> None:
    a = np.asarray(u, dtype=float)
    if not np.all(a >= 0.0):
        raise OutOfRange(f"u must be >= 0, got {u!r}")


def _series(u2: float, coeff) -> float:
    """Sum ``coeff(n) * (-u^2)^n`` for n = 0, 1, ... until terms drop below 1e-16."""
    total = 0.0
    power = 1.0
    n = 0
    while True:
        term = coeff(n) * power
        total += term
        n += 1
        power *= -u2
        if abs(coeff(n) * power) < _SERIES_EPS:
            return total


def _g_series(u: float) -> float:
    # cos u/u^2 - sin u/u^3 = sum_{n>=0} (-1)^{n+1} (2n+2) u^{2n} / (2n+3)!
    return _series(u * u, lambda n: -(2 * n + 2) / math.factorial(2 * n + 3))


def _sinc_series(u: float) -> float:
    return _series(u * u, lambda n: 1.0 / math.factorial(2 * n + 1))


def near_field_term(u):
    """``cos u / u^2 - sin u / u^3``, stable down to ``u = 0`` (value -1/3)."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < SERIES_THRESHOLD
    if np.any(small):
        out[small] = [_g_series(v) for v in u[small]]
    big = ~small
    ub = u[big]
    out[big] = np.cos(ub) / ub**2 - np.sin(ub) / ub**3
    return out if out.ndim else float(out)


def sinc(u):
    """Unnormalised ``sin u / u`` with the same small-argument branch."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < SERIES_THRESHOLD
    if np.any(small):
        out[small] = [_sinc_series(v) for v in u[small]]
    big = ~small
    out[big] = np.sin(u[big]) / u[big]
    return out if out.ndim else float(out)


def relative_decay_rate(u, mu, xi):
    """``Gamma_mirr / Gamma_free`` as a function of ``u = 2kx``.

    Vectorised over numpy-broadcastable ``u``, ``mu`` and ``xi``.
    """
    _check_u(u)
    _check_mu(mu)
    _check_xi(xi)
    g = near_field_term(u)
    s = sinc(u)
    out = 1.0 - xi * g * (1.0 + mu) - xi * s * (1.0 - mu)
    out = np.asarray(out, dtype=float)
    return out if out.ndim else float(out)


def branch_mismatch(u: float = SERIES_THRESHOLD) -> float:
    """Largest disagreement between series and closed form at ``u``."""
    g_closed = math.cos(u) / u**2 - math.sin(u) / u**3
    s_closed = math.sin(u) / u
    return max(abs(_g_series(u) - g_closed), abs(_sinc_series(u) - s_closed))


def contact_limit(mu, xi):
    """``u -> 0`` limit of the relative rate: ``1 + (2 xi / 3)(2 mu - 1)``."""
    _check_mu(mu)
    _check_xi(xi)
    out = 1.0 + (2.0 * xi / 3.0) * (2.0 * mu - 1.0)
    out = np.asarray(out, dtype=float)
    return out if out.ndim else float(out)


def decay_rate(emitter: EmitterConfig, spec: MirrorSpec) -> DecayResult:
    """Decay rate for an atom on side a at distance ``emitter.x``.

    For an atom on side b, pass ``spec.swapped()``.
    """
    xi = mirror_parameter(spec).xi
    u = 2.0 * emitter.k * emitter.x
    if u == 0.0:
        ratio = contact_limit(emitter.mu, xi)
    else:
        ratio = relative_decay_rate(u, emitter.mu, xi)
    return DecayResult(ratio=ratio, gamma_mirr=ratio * emitter.gamma_free, u=u)


def decay_curve_from_xi(xi: float, mu: float, kx_grid: Sequence[float]) -> DecayCurve:
    kx = np.asarray(kx_grid, dtype=float)
    if kx.ndim != 1 or len(kx) == 0:
        raise NonMonotonicGrid("kx grid must be a non-empty 1-D sequence")
    if np.any(np.diff(kx) <= 0):
        raise NonMonotonicGrid("kx grid must be strictly increasing")
    if kx[0] < 0:
        raise OutOfRange("kx grid must be non-negative")
    u = 2.0 * kx
    ratio = relative_decay_rate(u, mu, xi)
    return DecayCurve(xi=float(xi), mu=float(mu), kx=kx, u=u, ratio=np.atleast_1d(ratio))


def decay_curve(emitter_base: EmitterConfig, spec: MirrorSpec, kx_grid: Sequence[float]) -> DecayCurve:
    """Sample the relative rate along ``kx_grid``; ``emitter_base.x`` is ignored."""
    xi = mirror_parameter(spec).xi
    return decay_curve_from_xi(xi, emitter_base.mu, kx_grid)
