"""Angular power spectrum at the receiver and its integration under an Rx pattern."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import i0e

from omnisynth.antenna import AntennaPattern
from omnisynth.geometry import MultiEllipticalStructure, scatterer_arrays

logger = logging.getLogger(__name__)

DEFAULT_M_PHI = 3600


class SpectrumError(ValueError):
    pass


def azimuth_grid(m_phi: int = DEFAULT_M_PHI) -> np.ndarray:
    """Uniform grid ``-pi + m * 2pi/m_phi`` covering ``[-pi, pi)``."""
    if m_phi < 2:
        raise SpectrumError(f"azimuth grid needs at least 2 points, got {m_phi}")
    return -np.pi + np.arange(m_phi) * (2.0 * np.pi / m_phi)


@dataclass(frozen=True, eq=False)
class AngularPowerSpectrum:
    grid: np.ndarray
    density: np.ndarray  # linear power per radian

    def __post_init__(self):
        if self.grid.shape != self.density.shape:
            raise SpectrumError("grid and density shapes differ")
        if np.any(self.density < 0):
            raise SpectrumError("power density must be non-negative")

    @property
    def step(self) -> float:
        return 2.0 * np.pi / self.grid.size

    def total_power(self) -> float:
        return float(np.sum(self.density) * self.step)

    def __add__(self, other: "AngularPowerSpectrum") -> "AngularPowerSpectrum":
        return total_pas(self, other)


def von_mises_pdf(phi, gamma: float):
    """Von Mises density ``exp(gamma cos phi) / (2 pi I0(gamma))``.

    Evaluated with the exponentially scaled Bessel function so large
    concentrations do not overflow.
    """
    if not (gamma >= 0):
        raise SpectrumError(f"von Mises concentration must be >= 0, got {gamma!r}")
    phi = np.asarray(phi, dtype=float)
    out = np.exp(gamma * (np.cos(phi) - 1.0)) / (2.0 * np.pi * i0e(gamma))
    return out if out.ndim else float(out)


def local_scatter_pas(p0: float, gamma: float, grid: np.ndarray) -> AngularPowerSpectrum:
    if not (p0 >= 0):
        raise SpectrumError(f"local scattering power must be >= 0, got {p0!r}")
    if p0 == 0:
        return AngularPowerSpectrum(grid, np.zeros_like(grid))
    return AngularPowerSpectrum(grid, p0 * von_mises_pdf(grid, gamma))


def _bin_index(phi: np.ndarray, m_phi: int) -> np.ndarray:
    return np.rint((phi + np.pi) * (m_phi / (2.0 * np.pi))).astype(np.int64) % m_phi


def cluster_pas(
    structure: MultiEllipticalStructure,
    tx_pattern: AntennaPattern,
    k: int,
    grid: np.ndarray,
) -> AngularPowerSpectrum:
    """Deposit every cluster's power onto the AoA grid.

    Within a cluster the power is shared among its `k` paths in proportion
    to the Tx gain along each departure angle, renormalised so the cluster
    keeps its full power. A cluster the Tx beam does not illuminate at all
    contributes nothing.
    """
    m_phi = grid.size
    step = 2.0 * np.pi / m_phi
    binned = np.zeros(m_phi)
    d = structure.distance_d
    for ell in structure.ellipses:
        if ell.power == 0:
            continue
        paths = scatterer_arrays(ell, d, k)
        w = np.asarray(tx_pattern.gain(paths.aod), dtype=float)
        total = w.sum()
        if total <= 0:
            logger.info("cluster tau=%.3e s not illuminated by the Tx beam at D=%g m", ell.tau, d)
            continue
        binned += np.bincount(_bin_index(paths.aoa, m_phi), weights=ell.power * w / total, minlength=m_phi)
    return AngularPowerSpectrum(grid, binned / step)


def total_pas(cluster_spectrum: AngularPowerSpectrum, local_spectrum: AngularPowerSpectrum) -> AngularPowerSpectrum:
    if cluster_spectrum.grid.shape != local_spectrum.grid.shape or not np.array_equal(
        cluster_spectrum.grid, local_spectrum.grid
    ):
        raise SpectrumError("spectra are sampled on different azimuth grids")
    return AngularPowerSpectrum(cluster_spectrum.grid, cluster_spectrum.density + local_spectrum.density)


def received_power(pas: AngularPowerSpectrum, rx_pattern: AntennaPattern) -> float:
    """Midpoint-rule integral of the spectrum weighted by the Rx gain."""
    weights = np.asarray(rx_pattern.gain(pas.grid), dtype=float)
    return float(np.dot(pas.density, weights) * pas.step)
