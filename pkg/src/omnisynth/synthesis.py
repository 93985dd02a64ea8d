"""Directional-to-omnidirectional path-loss synthesis and close-in model fitting."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import brentq

from omnisynth.antenna import AntennaPattern
from omnisynth.geometry import SPEED_OF_LIGHT, build_ellipses
from omnisynth.pas import DEFAULT_M_PHI, azimuth_grid, cluster_pas, local_scatter_pas, received_power, total_pas
from omnisynth.pdp import ClusterSet

DEFAULT_SCATTERERS = 360


class SynthesisError(RuntimeError):
    pass


def free_space_pl(frequency: float, distance):
    """Friis free-space loss ``20 log10(4 pi d f / c)`` in dB."""
    distance = np.asarray(distance, dtype=float)
    if not (frequency > 0) or np.any(~(distance > 0)):
        raise ValueError("frequency and distance must be > 0")
    out = 20.0 * np.log10(4.0 * np.pi * distance * frequency / SPEED_OF_LIGHT)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class CiModel:
    """Close-in reference distance model (deterministic part only)."""

    ref_distance_d0: float
    pl_at_d0: float
    ple_n: float
    sigma: float = 0.0
    frequency: float | None = None

    def __post_init__(self):
        if not (self.ref_distance_d0 > 0):
            raise ValueError(f"reference distance must be > 0, got {self.ref_distance_d0!r}")
        if not (self.sigma >= 0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma!r}")

    @classmethod
    def anchored(cls, ple_n: float, frequency: float, ref_distance_d0: float = 1.0, sigma: float = 0.0) -> "CiModel":
        """CI model whose intercept is free-space loss at `ref_distance_d0`."""
        return cls(ref_distance_d0, free_space_pl(frequency, ref_distance_d0), ple_n, sigma, frequency)

    def __call__(self, distance):
        return evaluate_ci(self, distance)


def evaluate_ci(model: CiModel, distance):
    distance = np.asarray(distance, dtype=float)
    if np.any(~(distance > 0)):
        raise ValueError("distance must be > 0")
    out = model.pl_at_d0 + 10.0 * model.ple_n * np.log10(distance / model.ref_distance_d0)
    return out if out.ndim else float(out)


def fit_ci(
    points: Sequence[tuple[float, float]] | np.ndarray,
    ref_distance_d0: float = 1.0,
    frequency: float | None = None,
    *,
    free_intercept: bool = False,
    pl_at_d0: float | None = None,
) -> CiModel:
    """Least-squares CI fit.

    By default the intercept is pinned to ``free_space_pl(frequency, d0)``
    (or to an explicit `pl_at_d0`) and only the exponent is estimated;
    ``free_intercept=True`` fits both. ``sigma`` is the RMS residual.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two (distance, pl_db) points")
    d, pl = pts[:, 0], pts[:, 1]
    if np.any(~(d > 0)) or not np.all(np.isfinite(pl)):
        raise ValueError("distances must be > 0 and path losses finite")
    x = 10.0 * np.log10(d / ref_distance_d0)

    if free_intercept:
        if np.ptp(x) == 0:
            raise ValueError("all distances coincide; exponent is not identifiable")
        design = np.column_stack([np.ones_like(x), x])
        (intercept, n), *_ = np.linalg.lstsq(design, pl, rcond=None)
    else:
        if pl_at_d0 is None:
            if frequency is None:
                raise ValueError("anchored fit needs frequency or pl_at_d0")
            pl_at_d0 = free_space_pl(frequency, ref_distance_d0)
        intercept = pl_at_d0
        sxx = float(np.dot(x, x))
        if sxx == 0:
            raise ValueError("all distances equal the reference distance; exponent is not identifiable")
        n = float(np.dot(x, pl - intercept)) / sxx

    resid = pl - (intercept + n * x)
    sigma = float(np.sqrt(np.mean(resid**2)))
    return CiModel(ref_distance_d0, float(intercept), float(n), sigma, frequency)


def distance_grid(d_min: float, d_max: float, step: float) -> np.ndarray:
    """Inclusive grid ``d_min, d_min + step, ..., d_max``; the step must divide the range."""
    if not (d_min > 0 and step > 0 and d_max > d_min):
        raise ValueError("need 0 < d_min < d_max and step > 0")
    count = (d_max - d_min) / step
    m = round(count)
    if abs(count - m) > 1e-9 * max(1.0, count):
        raise ValueError(f"step {step} does not divide the range [{d_min}, {d_max}]")
    return d_min + step * np.arange(m + 1)


@dataclass(frozen=True, eq=False)
class SynthesisScenario:
    frequency: float  # Hz
    distances: np.ndarray  # m, constant step
    directional_model: CiModel
    tx_pattern: AntennaPattern
    rx_pattern: AntennaPattern
    clusters: ClusterSet
    gamma: float = 0.0
    m_phi: int = DEFAULT_M_PHI
    scatterers: int = DEFAULT_SCATTERERS
    free_intercept: bool = False
    label: str = ""

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=float)
        object.__setattr__(self, "distances", d)
        if not (self.frequency > 0):
            raise ValueError("frequency must be > 0")
        if d.ndim != 1 or d.size < 2:
            raise ValueError("distance grid needs at least two points")
        if not d[0] > 0:
            raise ValueError("distances must be > 0")
        steps = np.diff(d)
        if not (steps[0] > 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("distance grid must have a constant positive step")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.m_phi < 2 or self.scatterers < 1:
            raise ValueError("m_phi must be >= 2 and scatterers >= 1")


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    distances: np.ndarray
    pl_direct_db: np.ndarray
    p_direct: np.ndarray
    p_omni: np.ndarray
    pl_omni_db: np.ndarray
    omni_model: CiModel
    scenario: SynthesisScenario | None = field(default=None, repr=False)

    @property
    def correction_db(self) -> np.ndarray:
        return self.pl_omni_db - self.pl_direct_db

    @property
    def sigma(self) -> float:
        return self.omni_model.sigma

    def rows(self) -> Iterator[tuple[float, float, float, float, float]]:
        for row in zip(self.distances, self.pl_direct_db, self.p_direct, self.p_omni, self.pl_omni_db):
            yield tuple(float(v) for v in row)


def received_powers(scenario: SynthesisScenario, distance_d: float, local=None) -> tuple[float, float]:
    """``(P_direct, P_omni)`` at one Tx-Rx distance."""
    grid = azimuth_grid(scenario.m_phi)
    if local is None:
        local = local_scatter_pas(scenario.clusters.p0, scenario.gamma, grid)
    structure = build_ellipses(scenario.clusters, distance_d)
    iso = AntennaPattern.isotropic()

    direct = total_pas(cluster_pas(structure, scenario.tx_pattern, scenario.scatterers, grid), local)
    omni = total_pas(cluster_pas(structure, iso, scenario.scatterers, grid), local)
    return received_power(direct, scenario.rx_pattern), received_power(omni, iso)


def synthesize(scenario: SynthesisScenario) -> SynthesisResult:
    """Run the per-distance correction loop and fit the omnidirectional CI model.

    The correction lowers the directional loss by the ratio of power an
    isotropic pair collects to what the directional pair collects.
    """
    d = scenario.distances
    pl_direct = np.asarray(evaluate_ci(scenario.directional_model, d), dtype=float)
    local = local_scatter_pas(scenario.clusters.p0, scenario.gamma, azimuth_grid(scenario.m_phi))

    p_direct = np.empty_like(d)
    p_omni = np.empty_like(d)
    for j, dj in enumerate(d):
        p_direct[j], p_omni[j] = received_powers(scenario, float(dj), local)
        if not p_direct[j] > 0:
            raise SynthesisError(
                f"directional antennas collect no power at D = {dj:g} m; check beam widths and gamma"
            )

    pl_omni = pl_direct - 10.0 * np.log10(p_omni / p_direct)

    dm = scenario.directional_model
    omni_model = fit_ci(
        np.column_stack([d, pl_omni]),
        dm.ref_distance_d0,
        scenario.frequency,
        free_intercept=scenario.free_intercept,
        pl_at_d0=dm.pl_at_d0,
    )
    return SynthesisResult(d, pl_direct, p_direct, p_omni, pl_omni, omni_model, scenario)


def calibrate_gamma(scenario: SynthesisScenario, target_ple: float, gamma_max: float = 1e4, xtol: float = 1e-3) -> float:
    """Von Mises concentration that makes the fitted omni exponent hit `target_ple`.

    The omni exponent grows with concentration (a tighter local-scattering
    lobe is collected better by the directional Rx beam), so a bracketing
    root search over ``[0, gamma_max]`` is enough.
    """

    def miss(g):
        return synthesize(dataclasses.replace(scenario, gamma=g)).omni_model.ple_n - target_ple

    lo, hi = miss(0.0), miss(gamma_max)
    if lo * hi > 0:
        raise SynthesisError(
            f"target exponent {target_ple} unreachable for gamma in [0, {gamma_max}] "
            f"(range {lo + target_ple:.3f}..{hi + target_ple:.3f})"
        )
    return float(brentq(miss, 0.0, gamma_max, xtol=xtol))
