"""Linear transmission and reflection spectra of the driven cavity.

The cavity is a symmetric two-port resonator (equal mirror rates) driven
through one mirror at normal incidence.  Each exciton mode enters the
cavity response as a damped oscillator, giving

    D(nu) = i (nu_c - nu) + kappa/2 + sum_m g_m^2 / (i (nu_m - nu) + Gamma_a/2)
    t(nu) = gamma_mirror / D(nu),   r(nu) = 1 - t(nu)

with kappa = 2 gamma_mirror + gamma_side the total cavity width.  All rates
are FWHM linewidths, so half-widths appear in the Lorentzian denominators
and an empty lossless cavity transmits a Lorentzian of FWHM kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exciton import envelope_mode_couplings, exciton_energies, mode_coupling_array
from .params import SystemParams, cavity_frequency
from .polariton import (
    ModelVariant,
    collective_coupling_noninteracting,
    superradiant_coupling,
    superradiant_energy,
)

# Default sweep: 2001 points over +-150 MHz around the cavity/exciton
# midpoint, about 15 grid points per 10-MHz linewidth.
DEFAULT_GRID_POINTS = 2001
DEFAULT_GRID_SPAN_HZ = 1.5e8


class NoOutputChannelError(ValueError):
    """The cavity has no mirror output channel (kappa = 0)."""


@dataclass(frozen=True)
class DampingSet:
    """FWHM damping rates of the driven system."""

    gamma_mirror_hz: float  # per mirror, two identical mirrors
    gamma_cavity_hz: float  # side loss into free space
    gamma_atom_hz: float    # excited-atom linewidth

    def __post_init__(self) -> None:
        for name in ("gamma_mirror_hz", "gamma_cavity_hz", "gamma_atom_hz"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be >= 0, got {value!r}")

    @property
    def cavity_width_hz(self) -> float:
        """Total cavity linewidth kappa = 2 gamma_mirror + gamma_side."""
        return 2.0 * self.gamma_mirror_hz + self.gamma_cavity_hz

    @classmethod
    def from_params(cls, params: SystemParams) -> "DampingSet":
        return cls(
            gamma_mirror_hz=params.gamma_mirror_hz,
            gamma_cavity_hz=params.gamma_cavity_hz,
            gamma_atom_hz=params.gamma_atom_hz,
        )


@dataclass(frozen=True)
class Peak:
    location_hz: float
    height: float
    fwhm_hz: float  # NaN when a half-height crossing lies outside the trace


@dataclass(frozen=True)
class SpectrumTrace:
    """Sampled spectrum with transmission peak metadata."""

    frequencies_hz: np.ndarray
    transmission: np.ndarray
    reflection: np.ndarray
    peaks: tuple[Peak, ...]
    center_hz: float  # midpoint of cavity and exciton frequencies


def variant_resonances(
    params: SystemParams, variant: ModelVariant, envelope_exact: bool = False
) -> list[tuple[float, float]]:
    """(coupling_hz, frequency_hz) of the exciton modes seen by the cavity.

    Two-mode: the superradiant exciton only.  Multimode: every coupled
    chain mode (the odd-k set for a flat envelope).  Non-interacting: one
    collective mode at the bare atomic line.
    """
    if variant is ModelVariant.TWO_MODE_SUPERRADIANT:
        return [(superradiant_coupling(params), superradiant_energy(params))]
    if variant is ModelVariant.NONINTERACTING_COLLECTIVE:
        return [(collective_coupling_noninteracting(params), params.atom_frequency_hz)]
    if variant is ModelVariant.FULL_MULTIMODE:
        energies = exciton_energies(params)
        if envelope_exact:
            couplings = envelope_mode_couplings(params)
        else:
            couplings = mode_coupling_array(params)
        keep = couplings != 0.0
        return list(zip(couplings[keep].tolist(), energies[keep].tolist()))
    raise ValueError(f"unknown model variant: {variant}")


def cavity_response(
    nu_hz: np.ndarray | float,
    cavity_hz: float,
    damping: DampingSet,
    resonances: list[tuple[float, float]],
) -> tuple[np.ndarray, np.ndarray]:
    """Complex transmission and reflection amplitudes at drive frequency nu.

    ``resonances`` holds (coupling_hz, frequency_hz) pairs; an empty list
    gives the bare-cavity response.
    """
    kappa = damping.cavity_width_hz
    if kappa <= 0.0:
        raise NoOutputChannelError("cavity width kappa = 0: no mirror output channel")
    nu = np.asarray(nu_hz, dtype=float)
    denom = 1j * (cavity_hz - nu) + kappa / 2.0
    half_atom = damping.gamma_atom_hz / 2.0
    for coupling, frequency in resonances:
        denom = denom + coupling**2 / (1j * (frequency - nu) + half_atom)
    t = damping.gamma_mirror_hz / denom
    return t, 1.0 - t


def transfer_function(
    nu_hz: np.ndarray | float,
    params: SystemParams,
    damping: DampingSet,
    variant: ModelVariant,
    envelope_exact: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Complex t(nu), r(nu) for the chosen model variant."""
    return cavity_response(
        nu_hz,
        cavity_frequency(params),
        damping,
        variant_resonances(params, variant, envelope_exact),
    )


def _variant_center(params: SystemParams, variant: ModelVariant) -> tuple[float, float]:
    """Midpoint of cavity and exciton frequencies, plus the variant's
    zero-detuning splitting (used to size sweep grids)."""
    if variant is ModelVariant.NONINTERACTING_COLLECTIVE:
        exciton_hz = params.atom_frequency_hz
        omega0 = 2.0 * collective_coupling_noninteracting(params)
    else:
        exciton_hz = superradiant_energy(params)
        omega0 = 2.0 * superradiant_coupling(params)
    return (cavity_frequency(params) + exciton_hz) / 2.0, omega0


def default_grid(
    params: SystemParams,
    variant: ModelVariant = ModelVariant.TWO_MODE_SUPERRADIANT,
    points: int = DEFAULT_GRID_POINTS,
    span_hz: float = DEFAULT_GRID_SPAN_HZ,
) -> np.ndarray:
    """Frequency grid centred between the cavity and exciton lines."""
    if points < 3:
        raise ValueError(f"grid needs at least 3 points, got {points}")
    if span_hz <= 0:
        raise ValueError(f"grid span must be positive, got {span_hz}")
    center, _ = _variant_center(params, variant)
    return center + np.linspace(-span_hz, span_hz, points)


def sweep(
    params: SystemParams,
    damping: DampingSet,
    variant: ModelVariant,
    grid: np.ndarray | None = None,
    envelope_exact: bool = False,
) -> SpectrumTrace:
    """Evaluate the spectrum over a frequency grid and locate peaks.

    The grid must be strictly increasing and must comfortably cover the
    polariton doublet around the cavity/exciton midpoint.
    """
    center, omega0 = _variant_center(params, variant)
    if grid is None:
        grid = default_grid(params, variant)
    else:
        grid = np.asarray(grid, dtype=float)
    if grid.size < 3 or np.any(np.diff(grid) <= 0):
        raise ValueError("frequency grid must be strictly increasing with >= 3 points")
    # 2.5 splittings per side keeps both branches and their tails on-grid.
    reach = 2.5 * omega0
    if grid[0] > center - reach or grid[-1] < center + reach:
        raise ValueError(
            f"grid [{grid[0]:.6e}, {grid[-1]:.6e}] Hz does not cover "
            f"{center:.6e} +- {reach:.3e} Hz around the resonance"
        )

    t, r = transfer_function(grid, params, damping, variant, envelope_exact)
    transmission = np.abs(t) ** 2
    reflection = np.abs(r) ** 2
    peaks = tuple(peak_find(grid, transmission))
    return SpectrumTrace(
        frequencies_hz=grid,
        transmission=transmission,
        reflection=reflection,
        peaks=peaks,
        center_hz=center,
    )


def _parabolic_vertex(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Vertex of the parabola through three points (x shifted for
    conditioning); falls back to the middle sample if degenerate."""
    x0 = x[1]
    a, b, c = np.polyfit(x - x0, y, 2)
    if a >= 0.0:
        return float(x0), float(y[1])
    xv = -b / (2.0 * a)
    return float(x0 + xv), float(c - b**2 / (4.0 * a))


def _half_crossing(
    freq: np.ndarray, values: np.ndarray, start: int, half: float, step: int
) -> float:
    """Frequency where the trace crosses ``half`` walking from a peak."""
    i = start
    while 0 <= i + step < values.size:
        j = i + step
        if values[j] < half <= values[i]:
            frac = (values[i] - half) / (values[i] - values[j])
            return float(freq[i] + frac * (freq[j] - freq[i]))
        if values[j] > values[i] and values[j] > half:
            break  # rising into a neighbouring peak before crossing
        i = j
    return math.nan


def peak_find(frequencies_hz: np.ndarray, values: np.ndarray) -> list[Peak]:
    """Local maxima by 3-point comparison with parabolic refinement.

    FWHM comes from linearly interpolated half-height crossings on both
    sides (NaN when a side never crosses).  Peaks are ordered by location;
    a trace with no interior maximum yields an empty list.
    """
    freq = np.asarray(frequencies_hz, dtype=float)
    vals = np.asarray(values, dtype=float)
    if freq.size != vals.size:
        raise ValueError("frequency and value arrays must have equal length")
    if freq.size < 3:
        return []
    peaks = []
    for i in range(1, freq.size - 1):
        if vals[i] > vals[i - 1] and vals[i] > vals[i + 1]:
            location, height = _parabolic_vertex(freq[i - 1 : i + 2], vals[i - 1 : i + 2])
            half = height / 2.0
            left = _half_crossing(freq, vals, i, half, -1)
            right = _half_crossing(freq, vals, i, half, +1)
            peaks.append(Peak(location_hz=location, height=height, fwhm_hz=right - left))
    peaks.sort(key=lambda p: p.location_hz)
    return peaks
