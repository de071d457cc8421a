"""1D mirror-image mapping for wave packets at normal incidence.

Packets never see the mirror.  Each one propagates as in free space (an exact,
dispersionless translation) and the field in the presence of the mirror is
assembled afterwards from free fields and their mirror images:

    x <  0:  E_b(x) + r_b e^{i phi_3} E_b(-x) + t_a e^{i phi_4} E_a(x)
    x >= 0:  E_a(x) + r_a e^{i phi_1} E_a(-x) + t_b e^{i phi_2} E_b(x)

The grid is symmetric about ``x = 0`` with an even number of cells and no
node on the plane itself, so ``x -> -x`` is the index reversal ``j -> n-1-j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GridOverrun, ScatteringIncomplete, SideMismatch
from .mirror import MirrorSpec

#: amplitudes below this fraction of the peak count as outside the support
SUPPORT_TOL = 1e-10
_INTEGER_SHIFT_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    n: int
    half_width: float

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"grid needs an even number of cells >= 2, got {self.n}")
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + (np.arange(self.n) + 0.5) * self.dx

    @property
    def mid(self) -> int:
        """Index of the first cell with ``x >= 0``."""
        return self.n // 2


@dataclass(frozen=True)
class WavePacket:
    """Free-space field of one packet, sampled at time ``t_emit``.

    ``direction`` is +1 for motion towards +x and -1 towards -x.
    """

    grid: Grid
    samples: np.ndarray
    carrier: float
    direction: int
    side: str
    t_emit: float = 0.0
    speed: float = 1.0

    def __post_init__(self):
        if self.side not in ("a", "b"):
            raise ValueError(f"side must be 'a' or 'b', got {self.side!r}")
        if self.direction not in (-1, 1):
            raise ValueError("direction must be +1 or -1")
        if self.samples.shape != (self.grid.n,):
            raise ValueError("samples do not match the grid")

    @property
    def moving_toward_mirror(self) -> bool:
        return (self.side == "a") == (self.direction < 0)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.dx)

    def scaled(self, factor: complex) -> "WavePacket":
        return replace(self, samples=self.samples * factor)

    def support(self) -> tuple[int, int]:
        return _support(self.samples)


@dataclass(frozen=True)
class FieldState:
    grid: Grid
    samples: np.ndarray
    time: float

    def side_energies(self) -> tuple[float, float]:
        """Energy on ``x >= 0`` (side a) and on ``x < 0`` (side b)."""
        w = np.abs(self.samples) ** 2 * self.grid.dx
        m = self.grid.mid
        return float(np.sum(w[m:])), float(np.sum(w[:m]))

    def rows(self) -> Iterable[tuple[float, float, float, float]]:
        """Snapshot rows ``(x, re, im, intensity)``."""
        for x, v in zip(self.grid.x, self.samples):
            yield float(x), float(v.real), float(v.imag), float(abs(v) ** 2)


@dataclass(frozen=True)
class EnergyLedger:
    input_a: float
    input_b: float
    output_a: float
    output_b: float

    @property
    def input_total(self) -> float:
        return self.input_a + self.input_b

    @property
    def output_total(self) -> float:
        return self.output_a + self.output_b

    @property
    def mirror_balance(self) -> float:
        """Energy unaccounted for in the outgoing field, attributed to the mirror."""
        return self.input_total - self.output_total

    @property
    def relative_imbalance(self) -> float:
        return abs(self.mirror_balance) / self.input_total

    def as_dict(self) -> dict[str, float]:
        return {
            "input_a": self.input_a,
            "input_b": self.input_b,
            "output_a": self.output_a,
            "output_b": self.output_b,
            "mirror_balance": self.mirror_balance,
            "relative_imbalance": self.relative_imbalance,
        }


def _support(samples: np.ndarray) -> tuple[int, int]:
    mag = np.abs(samples)
    peak = mag.max(initial=0.0)
    if peak == 0.0:
        raise ValueError("packet has no energy")
    idx = np.flatnonzero(mag > SUPPORT_TOL * peak)
    return int(idx[0]), int(idx[-1])


def _check_side(packet: WavePacket, samples: np.ndarray | None = None) -> None:
    lo, hi = _support(packet.samples if samples is None else samples)
    mid = packet.grid.mid
    if packet.side == "a" and lo < mid:
        raise SideMismatch(f"side-a packet extends to x={packet.grid.x[lo]:.6g} < 0")
    if packet.side == "b" and hi >= mid:
        raise SideMismatch(f"side-b packet extends to x={packet.grid.x[hi]:.6g} >= 0")


def gaussian_packet(
    grid: Grid,
    side: str,
    center: float,
    width: float,
    carrier: float,
    energy: float = 1.0,
    t_emit: float = 0.0,
    speed: float = 1.0,
    phase: float = 0.0,
) -> WavePacket:
    """Gaussian packet on ``side`` heading for the mirror, with the requested energy.

    ``width`` is the standard deviation of the amplitude envelope.  The carrier
    is referenced to ``center`` so that the a-packet centred at ``c`` is the exact
    mirror image of the b-packet centred at ``-c``.
    """
    direction = -1 if side == "a" else 1
    x = grid.x
    s = x - center
    samples = np.exp(-0.5 * (s / width) ** 2 + 1j * (direction * carrier * s + phase))
    samples *= math.sqrt(energy / (np.sum(np.abs(samples) ** 2) * grid.dx))
    packet = WavePacket(grid, samples, carrier, direction, side, t_emit, speed)
    _check_side(packet)
    return packet


def _shift(samples: np.ndarray, grid: Grid, distance: float) -> np.ndarray:
    cells = distance / grid.dx
    lo, hi = _support(samples)
    if lo + math.floor(cells) < 0 or hi + math.ceil(cells) > grid.n - 1:
        raise GridOverrun(f"shift by {distance:.6g} moves the packet off the grid")
    k = round(cells)
    if abs(cells - k) < _INTEGER_SHIFT_TOL:
        out = np.zeros_like(samples)
        if k >= 0:
            out[k:] = samples[: grid.n - k]
        else:
            out[:k] = samples[-k:]
        return out
    # band-limited translation; unitary, so the norm is kept to round-off
    kappa = 2.0 * np.pi * np.fft.fftfreq(grid.n, grid.dx)
    return np.fft.ifft(np.fft.fft(samples) * np.exp(-1j * kappa * distance))


def propagate_free(packet: WavePacket, t: float) -> WavePacket:
    """Translate the packet by ``speed * t`` along its direction of motion."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return packet
    moved = _shift(packet.samples, packet.grid, packet.direction * packet.speed * t)
    return replace(packet, samples=moved, t_emit=packet.t_emit + t)


def _free_field(packet: Optional[WavePacket], t: float, n: int) -> np.ndarray:
    if packet is None or t < packet.t_emit:
        return np.zeros(n, dtype=complex)
    return propagate_free(packet, t - packet.t_emit).samples


def _check_inputs(packet_a: Optional[WavePacket], packet_b: Optional[WavePacket]) -> Grid:
    if packet_a is None and packet_b is None:
        raise ValueError("at least one packet is required")
    for label, p in (("a", packet_a), ("b", packet_b)):
        if p is None:
            continue
        if p.side != label:
            raise SideMismatch(f"packet passed as side {label} is labelled {p.side!r}")
        if not p.moving_toward_mirror:
            raise SideMismatch(f"side-{label} packet is moving away from the mirror")
        _check_side(p)
    grids = {p.grid for p in (packet_a, packet_b) if p is not None}
    if len(grids) != 1:
        raise ValueError("packets live on different grids")
    return grids.pop()


def _assemble(ea: np.ndarray, eb: np.ndarray, spec: MirrorSpec, mid: int) -> np.ndarray:
    p1, p2, p3, p4 = (np.exp(1j * p) for p in spec.phases)
    left = eb + spec.r_b * p3 * eb[::-1] + spec.t_a * p4 * ea
    right = ea + spec.r_a * p1 * ea[::-1] + spec.t_b * p2 * eb
    return np.concatenate([left[:mid], right[mid:]])


def scatter(
    packet_a: Optional[WavePacket],
    packet_b: Optional[WavePacket],
    spec: MirrorSpec,
    t: float,
) -> FieldState:
    grid = _check_inputs(packet_a, packet_b)
    ea = _free_field(packet_a, t, grid.n)
    eb = _free_field(packet_b, t, grid.n)
    return FieldState(grid, _assemble(ea, eb, spec, grid.mid), float(t))


def total_energy(state: FieldState) -> float:
    return float(np.sum(np.abs(state.samples) ** 2) * state.grid.dx)


def energy_audit(
    packet_a: Optional[WavePacket],
    packet_b: Optional[WavePacket],
    spec: MirrorSpec,
    t_final: float,
) -> EnergyLedger:
    """Compare incoming energy per side with outgoing energy per side at ``t_final``."""
    grid = _check_inputs(packet_a, packet_b)
    for p in (packet_a, packet_b):
        if p is None:
            continue
        if t_final < p.t_emit:
            raise ScatteringIncomplete(f"side-{p.side} packet is emitted after t_final")
        moved = propagate_free(p, t_final - p.t_emit).samples
        lo, hi = _support(moved)
        crossed = hi < grid.mid if p.side == "a" else lo >= grid.mid
        if not crossed:
            raise ScatteringIncomplete(
                f"side-{p.side} packet has not cleared the mirror plane at t={t_final:g}"
            )
    state = scatter(packet_a, packet_b, spec, t_final)
    out_a, out_b = state.side_energies()
    return EnergyLedger(
        input_a=packet_a.energy if packet_a is not None else 0.0,
        input_b=packet_b.energy if packet_b is not None else 0.0,
        output_a=out_a,
        output_b=out_b,
    )


def probe_history(
    packet_a: Optional[WavePacket],
    packet_b: Optional[WavePacket],
    spec: MirrorSpec,
    x_probe: float,
    times: Sequence[float],
) -> np.ndarray:
    """Field at the grid cell nearest ``x_probe`` for each time in ``times``."""
    grid = _check_inputs(packet_a, packet_b)
    j = int(np.argmin(np.abs(grid.x - x_probe)))
    return np.array([scatter(packet_a, packet_b, spec, t).samples[j] for t in times])
