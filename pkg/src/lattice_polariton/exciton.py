"""Standing-wave exciton modes of the finite chain.

An electronic excitation hops between nearest-neighbour sites, so with
fixed (empty-site) boundaries the single-excitation Hamiltonian is a real
symmetric Toeplitz tridiagonal matrix.  Its eigenvectors are sine standing
waves indexed k = 1..N, and the cavity couples only to the odd-k (bright)
modes; even-k modes have a vanishing net dipole and stay dark.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .params import (
    EPSILON_0,
    PLANCK_H,
    SystemParams,
    cavity_frequency,
    mode_volume,
    site_positions,
    transfer_parameter,
)


class ModeKind(str, enum.Enum):
    BRIGHT = "bright"
    DARK = "dark"


@dataclass(frozen=True)
class ExcitonMode:
    """One standing-wave exciton of the chain."""

    k: int                      # mode index, 1..N
    energy_hz: float            # mode energy / h
    coupling_hz: float          # |cavity coupling| / h, >= 0
    kind: ModeKind              # dark iff k even iff coupling_hz == 0
    oscillator_fraction: float  # |coupling|^2 / sum of all |coupling|^2


def _check_mode_index(k: int, num_sites: int) -> None:
    if not 1 <= k <= num_sites:
        raise ValueError(f"mode index k={k} out of range 1..{num_sites}")


def exciton_energies(params: SystemParams) -> np.ndarray:
    """Mode energies in Hz for k = 1..N.

    nu_a + 2 J cos(pi k / (N+1)); the band width approaches 4|J| for
    large N.
    """
    n_plus_1 = params.num_sites + 1
    k = np.arange(1, params.num_sites + 1)
    transfer = transfer_parameter(params)
    return params.atom_frequency_hz + 2.0 * transfer * np.cos(np.pi * k / n_plus_1)


def sine_mode_vector(k: int, num_sites: int) -> np.ndarray:
    """Unit-norm eigenvector of mode k: component n is
    sqrt(2/(N+1)) sin(pi n k / (N+1))."""
    _check_mode_index(k, num_sites)
    n = np.arange(1, num_sites + 1)
    return math.sqrt(2.0 / (num_sites + 1)) * np.sin(np.pi * n * k / (num_sites + 1))


def coupling_sum(k: int, num_sites: int) -> float:
    """Site sum of the mode-k sine amplitudes.

    Equals cot(pi k / (2(N+1))) for odd k and exactly zero for even k;
    the even case is decided by parity, not by numeric cancellation.
    """
    _check_mode_index(k, num_sites)
    if k % 2 == 0:
        return 0.0
    return 1.0 / math.tan(math.pi * k / (2.0 * (num_sites + 1)))


def site_coupling(params: SystemParams) -> float:
    """Single-site exciton-photon coupling magnitude in Hz:
    sqrt(nu_c mu^2 / (2 eps0 V h))."""
    nu_c = cavity_frequency(params)
    volume = mode_volume(params)
    return math.sqrt(nu_c * params.dipole_Cm**2 / (2.0 * EPSILON_0 * volume * PLANCK_H))


def mode_coupling_array(params: SystemParams) -> np.ndarray:
    """Cavity coupling magnitudes in Hz for k = 1..N (flat beam envelope).

    Mode k couples with sqrt(2/(N+1)) cot(pi k / (2(N+1))) times the
    single-site coupling for odd k, and exactly zero for even k.
    """
    n_plus_1 = params.num_sites + 1
    scale = site_coupling(params) * math.sqrt(2.0 / n_plus_1)
    couplings = np.zeros(params.num_sites)
    for k in range(1, params.num_sites + 1, 2):
        couplings[k - 1] = scale * coupling_sum(k, params.num_sites)
    return couplings


def envelope_mode_couplings(params: SystemParams) -> np.ndarray:
    """Cavity couplings in Hz with the exact Gaussian beam envelope.

    Built in the site basis with per-site factor exp(-r_n^2 / w0^2), then
    projected onto the sine modes.  Reduces to mode_coupling_array when the
    chain is much shorter than the waist.
    """
    num_sites = params.num_sites
    positions = site_positions(params)
    per_site = site_coupling(params) * np.exp(-((positions / params.beam_waist_m) ** 2))
    n = np.arange(1, num_sites + 1)
    transform = math.sqrt(2.0 / (num_sites + 1)) * np.sin(
        np.pi * np.outer(n, n) / (num_sites + 1)
    )
    return transform.T @ per_site


def oscillator_fractions(params: SystemParams) -> np.ndarray:
    """Fraction of the total oscillator strength carried by each mode.

    Weights are squared couplings normalised to unit sum; the nodeless
    k = 1 mode carries about 81% for large N.
    """
    couplings = mode_coupling_array(params)
    weights = couplings**2
    return weights / weights.sum()


def mode_couplings(params: SystemParams) -> list[ExcitonMode]:
    """All exciton modes with energies, couplings, parity class, and
    oscillator fractions.  The overall coupling phase is not stored: no
    observable in this package depends on it."""
    energies = exciton_energies(params)
    couplings = mode_coupling_array(params)
    fractions = couplings**2 / (couplings**2).sum()
    modes = []
    for k in range(1, params.num_sites + 1):
        modes.append(
            ExcitonMode(
                k=k,
                energy_hz=float(energies[k - 1]),
                coupling_hz=float(couplings[k - 1]),
                kind=ModeKind.DARK if k % 2 == 0 else ModeKind.BRIGHT,
                oscillator_fraction=float(fractions[k - 1]),
            )
        )
    return modes


def coupling_sum_rule(num_sites: int) -> float:
    """Sum over odd k of cot^2(pi k / (2(N+1))).

    Equals N(N+1)/2 exactly; used as a numeric cross-check of the mode
    couplings.
    """
    if num_sites < 1:
        raise ValueError(f"num_sites must be >= 1, got {num_sites}")
    total = 0.0
    for k in range(1, num_sites + 1, 2):
        total += coupling_sum(k, num_sites) ** 2
    return total


@dataclass(frozen=True)
class SiteHamiltonian:
    """Site-basis excitation Hamiltonian: uniform diagonal, uniform
    nearest-neighbour off-diagonal, fixed (empty) boundaries."""

    dim: int
    diagonal_hz: float
    offdiag_hz: float

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")

    @classmethod
    def from_params(cls, params: SystemParams) -> "SiteHamiltonian":
        return cls(
            dim=params.num_sites,
            diagonal_hz=params.atom_frequency_hz,
            offdiag_hz=transfer_parameter(params),
        )

    def matrix(self) -> np.ndarray:
        h = np.diag(np.full(self.dim, self.diagonal_hz))
        off = np.full(self.dim - 1, self.offdiag_hz)
        h += np.diag(off, 1) + np.diag(off, -1)
        return h


def diagonalize_site_hamiltonian(h: SiteHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Brute-force eigendecomposition of the site Hamiltonian.

    Returns (eigenvalues ascending, eigenvectors as columns).  Serves as a
    numerical oracle for exciton_energies and sine_mode_vector.
    """
    if h.dim == 1:
        return np.array([h.diagonal_hz]), np.array([[1.0]])
    diagonal = np.full(h.dim, h.diagonal_hz)
    offdiag = np.full(h.dim - 1, h.offdiag_hz)
    return eigh_tridiagonal(diagonal, offdiag)
