"""Far-field quadrature check of the closed-form decay rate.

The emitter and its mirror image are two coherent point dipoles separated
by ``u / k`` along the mirror normal (the polar axis here).  The image of
a moment component parallel to the mirror is multiplied by ``-rho``, the
perpendicular component by ``+rho``.  The power drawn by the real dipole,
relative to its isolated value, is

    1 + rho * <Re[F_real . conj(F_image)]> / <|F_real|^2>

where ``F`` are the transverse far-field amplitudes and ``<.>`` is the
integral over the full solid angle.  Nothing from the closed form enters;
only the textbook intensity ``|k x p|^2`` and the path difference
``u cos(theta)``.

Mapping to the mirror parameter: a perfect mirror (xi = 3/2) must act as a
full-strength image (rho = 1), and the closed form is linear in xi, which
fixes ``rho = 2 xi / 3``.  This is derived by matching, not quoted.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import OutOfRange, QuadratureNotConverged
from .decay import XI_MAX


class Orientation(enum.Enum):
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"


@dataclass(frozen=True)
class ImagePairConfig:
    u: float
    rho: float
    orientation: Orientation

    def __post_init__(self):
        if not self.u >= 0:
            raise OutOfRange(f"u must be >= 0, got {self.u!r}")
        if not 0.0 <= self.rho <= 1.0:
            raise OutOfRange(f"rho must lie in [0, 1], got {self.rho!r}")

    @classmethod
    def from_xi(cls, u: float, xi: float, orientation: Orientation) -> "ImagePairConfig":
        if not 0.0 <= xi <= XI_MAX:
            raise OutOfRange(f"xi must lie in [0, {XI_MAX}], got {xi!r}")
        return cls(u=u, rho=2.0 * xi / 3.0, orientation=orientation)


@dataclass(frozen=True)
class QuadratureSettings:
    """``nodes`` is the starting count per angular dimension; it is doubled
    until two successive results agree to ``tol`` or ``max_nodes`` is hit."""

    nodes: int = 128
    scheme: str = "gauss-legendre"
    tol: float = 1e-10
    max_nodes: int = 1 << 15

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError("nodes must be positive")
        if self.scheme != "gauss-legendre":
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")


@lru_cache(maxsize=32)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = roots_legendre(n)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _azimuth(n: int) -> np.ndarray:
    # uniform nodes, trapezoid on a periodic integrand
    return 2.0 * np.pi * np.arange(n) / n


def _moments(orientation: Orientation) -> tuple[np.ndarray, np.ndarray]:
    """Unit moment of the real dipole and of its unit-strength image."""
    if orientation is Orientation.PERPENDICULAR:
        p = np.array([0.0, 0.0, 1.0])
        return p, p.copy()
    p = np.array([1.0, 0.0, 0.0])
    return p, -p


def _interference_fraction(u: float, orientation: Orientation, n: int, n_phi: int) -> float:
    """``<Re F_real . conj F_image> / <|F_real|^2>`` on an ``n x n_phi`` grid."""
    t, wt = _legendre(n)
    p, q = _moments(orientation)
    if orientation is Orientation.PERPENDICULAR:
        # azimuthally symmetric: one node suffices
        phi, wphi = np.zeros(1), np.array([2.0 * np.pi])
    else:
        phi = _azimuth(n_phi)
        wphi = np.full(n_phi, 2.0 * np.pi / n_phi)
    st = np.sqrt(1.0 - t * t)
    # unit propagation directions, shape (nt, nphi, 3)
    khat = np.stack(
        [
            st[:, None] * np.cos(phi)[None, :],
            st[:, None] * np.sin(phi)[None, :],
            np.broadcast_to(t[:, None], (len(t), len(phi))),
        ],
        axis=-1,
    )
    fp = p - khat * (khat @ p)[..., None]
    fq = q - khat * (khat @ q)[..., None]
    # image sits a distance u/k further along -z; relative far-field phase u*cos(theta)
    phase = np.cos(u * t)[:, None]
    w = wt[:, None] * wphi[None, :]
    cross = np.sum(w * np.einsum("ijk,ijk->ij", fp, fq) * phase)
    self_ = np.sum(w * np.einsum("ijk,ijk->ij", fp, fp))
    return float(cross / self_)


def pair_power_ratio(config: ImagePairConfig, settings: QuadratureSettings = QuadratureSettings()) -> float:
    """Power drawn by the real dipole next to its image, over the isolated power."""
    if config.rho == 0.0:
        return 1.0
    n = settings.nodes
    # the azimuthal integrand is a trig polynomial of degree 2, so the uniform
    # rule is exact from 3 nodes on; only the polar count is refined
    n_phi = max(settings.nodes, 3)
    prev = _interference_fraction(config.u, config.orientation, n, n_phi)
    while True:
        n *= 2
        if n > settings.max_nodes:
            raise QuadratureNotConverged(
                f"no agreement to {settings.tol:g} up to {settings.max_nodes} nodes (u={config.u})"
            )
        cur = _interference_fraction(config.u, config.orientation, n, n_phi)
        if abs(cur - prev) <= settings.tol:
            return 1.0 + config.rho * cur
        prev = cur


def oracle_relative_decay(u: float, mu: float, xi: float,
                          settings: QuadratureSettings = QuadratureSettings()) -> float:
    """Orientation mixture of the parallel and perpendicular image-pair ratios."""
    if not 0.0 <= mu <= 1.0:
        raise OutOfRange(f"mu must lie in [0, 1], got {mu!r}")
    par = pair_power_ratio(ImagePairConfig.from_xi(u, xi, Orientation.PARALLEL), settings)
    perp = pair_power_ratio(ImagePairConfig.from_xi(u, xi, Orientation.PERPENDICULAR), settings)
    return (1.0 - mu) * par + mu * perp
