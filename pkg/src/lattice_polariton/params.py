"""Physical inputs, unit conventions, and derived quantities.

Every energy in this package is expressed as an ordinary frequency in Hz
(energy divided by the Planck constant); lengths, dipole moments, and
volumes are SI.  Damping rates are FWHM linewidths in Hz.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

# CODATA 2018 values.
PLANCK_H = 6.62607015e-34      # J s
EPSILON_0 = 8.8541878128e-12   # F/m

# Dipole angle where 1 - 3 cos^2(theta) vanishes and the nearest-neighbour
# transfer changes sign (about 54.7356 deg).
MAGIC_ANGLE_RAD = math.acos(1.0 / math.sqrt(3.0))


class InvalidParameterError(ValueError):
    """A physical input is non-positive or otherwise unusable."""


class ConfigError(ValueError):
    """A parameter file is malformed or carries unknown keys."""


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs of the chain-in-cavity system.

    Defaults are the reference set used throughout this package: a
    1000-site chain with 0.1 um spacing inside a 1.5 mm cavity of 0.3 mm
    waist, a 5e-29 C m transition dipole at 4e14 Hz, and 10 MHz damping
    on every channel.
    """

    lattice_constant_m: float = 1e-7
    num_sites: int = 1000
    beam_waist_m: float = 3e-4
    mirror_distance_m: float = 1.5e-3
    dipole_Cm: float = 5e-29
    atom_frequency_hz: float = 4e14
    theta_rad: float = 0.0          # dipole vs chain axis
    # None selects a cavity resonant with the lowest (superradiant) exciton.
    cavity_frequency_hz: float | None = None
    gamma_mirror_hz: float = 1e7    # per-mirror photon loss, FWHM
    gamma_cavity_hz: float = 1e7    # side loss into free space, FWHM
    gamma_atom_hz: float = 1e7      # excited-atom linewidth, FWHM
    # Explicit mode-volume override for sensitivity studies; None means the
    # Gaussian-mode value pi w0^2 L / 4.
    mode_volume_m3: float | None = None

    def __post_init__(self) -> None:
        for name in (
            "lattice_constant_m",
            "beam_waist_m",
            "mirror_distance_m",
            "dipole_Cm",
            "atom_frequency_hz",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be a positive number, got {value!r}")
        if not (isinstance(self.num_sites, int) and self.num_sites >= 1):
            raise InvalidParameterError(f"num_sites must be an integer >= 1, got {self.num_sites!r}")
        if not (isinstance(self.theta_rad, (int, float)) and math.isfinite(self.theta_rad)):
            raise InvalidParameterError(f"theta_rad must be a finite number, got {self.theta_rad!r}")
        for name in ("gamma_mirror_hz", "gamma_cavity_hz", "gamma_atom_hz"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise InvalidParameterError(f"{name} must be >= 0, got {value!r}")
        for name in ("cavity_frequency_hz", "mode_volume_m3"):
            value = getattr(self, name)
            if value is not None and not (
                isinstance(value, (int, float)) and math.isfinite(value) and value > 0
            ):
                raise InvalidParameterError(f"{name} must be a positive number, got {value!r}")


def mode_volume(params: SystemParams) -> float:
    """Cavity mode volume in m^3: pi w0^2 L / 4 for the lowest Gaussian mode
    (or the explicit override, when set)."""
    if params.mode_volume_m3 is not None:
        return params.mode_volume_m3
    return math.pi * params.beam_waist_m**2 * params.mirror_distance_m / 4.0


def transfer_parameter(params: SystemParams) -> float:
    """Nearest-neighbour dipole-dipole transfer rate in Hz (signed).

    mu^2 (1 - 3 cos^2 theta) / (4 pi eps0 a^3 h): negative for a dipole
    along the chain, positive beyond the magic angle.
    """
    geometry = 1.0 - 3.0 * math.cos(params.theta_rad) ** 2
    return (
        params.dipole_Cm**2
        * geometry
        / (4.0 * math.pi * EPSILON_0 * params.lattice_constant_m**3 * PLANCK_H)
    )


def chain_length(params: SystemParams) -> float:
    """Chain length (N + 1) a, counting the two empty boundary sites."""
    return (params.num_sites + 1) * params.lattice_constant_m


def site_positions(params: SystemParams) -> np.ndarray:
    """Positions of the N sites, centred on the beam axis.

    Written as (n - (N+1)/2) a so the array is exactly antisymmetric.
    """
    n = np.arange(1, params.num_sites + 1, dtype=float)
    return (n - (params.num_sites + 1) / 2.0) * params.lattice_constant_m


def cavity_frequency(params: SystemParams) -> float:
    """Cavity frequency in Hz; defaults to resonance with the lowest exciton."""
    if params.cavity_frequency_hz is not None:
        return params.cavity_frequency_hz
    shift = 2.0 * transfer_parameter(params) * math.cos(math.pi / (params.num_sites + 1))
    return params.atom_frequency_hz + shift


def validate(params: SystemParams) -> list[str]:
    """Return soft warnings; an empty list means the model assumptions hold.

    Currently checks the flat-envelope assumption: the chain must sit well
    inside the beam waist for exp(-r^2/w0^2) ~ 1 to be a good approximation.
    """
    warnings = []
    length = chain_length(params)
    if length > params.beam_waist_m:
        warnings.append(
            f"chain length {length:.3e} m exceeds the beam waist "
            f"{params.beam_waist_m:.3e} m; the flat mode-envelope "
            "approximation degrades"
        )
    return warnings


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from SystemParams, bundled for reporting."""

    mode_volume_m3: float
    transfer_hz: float
    chain_length_m: float
    site_positions_m: np.ndarray

    @classmethod
    def from_params(cls, params: SystemParams) -> "DerivedParams":
        return cls(
            mode_volume_m3=mode_volume(params),
            transfer_hz=transfer_parameter(params),
            chain_length_m=chain_length(params),
            site_positions_m=site_positions(params),
        )


# JSON keys accepted by parameter files, mapped onto SystemParams fields.
_JSON_KEYS = {field.name for field in fields(SystemParams)}
_INT_KEYS = {"num_sites"}


def params_from_dict(data: dict) -> SystemParams:
    """Build SystemParams from a parameter dictionary (JSON schema keys)."""
    if not isinstance(data, dict):
        raise ConfigError(f"parameter file must hold a JSON object, got {type(data).__name__}")
    unknown = sorted(set(data) - _JSON_KEYS)
    if unknown:
        raise ConfigError(f"unknown parameter key(s): {', '.join(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"parameter {key} must be a number, got {value!r}")
        if key in _INT_KEYS:
            if value != int(value):
                raise ConfigError(f"parameter {key} must be an integer, got {value!r}")
            kwargs[key] = int(value)
        else:
            kwargs[key] = float(value)
    return SystemParams(**kwargs)


def load_params(path: str | Path) -> SystemParams:
    """Load SystemParams from a JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    return params_from_dict(data)
