"""Confocal multi-elliptical scattering structure.

Frame: Tx at ``(-D/2, 0)``, Rx at ``(+D/2, 0)``. Departure angles are taken
from the Tx->Rx axis and arrival angles from the Rx->Tx axis, both positive
for scatterers with ``y > 0``, so a boresight-aligned link sees both beams
centred on zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from omnisynth.pdp import ClusterSet

SPEED_OF_LIGHT = 299_792_458.0


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Ellipse:
    a: float  # semi-major axis, m
    b: float  # semi-minor axis, m
    tau: float  # excess delay, s
    power: float  # linear cluster power

    @property
    def path_length(self) -> float:
        return 2.0 * self.a

    @property
    def degenerate(self) -> bool:
        return self.b == 0.0


@dataclass(frozen=True)
class MultiEllipticalStructure:
    distance_d: float
    ellipses: tuple[Ellipse, ...]
    p0: float = 0.0

    def __post_init__(self):
        if not (self.distance_d > 0):
            raise GeometryError(f"Tx-Rx distance must be > 0, got {self.distance_d!r}")
        taus = [e.tau for e in self.ellipses]
        if any(t1 <= t0 for t0, t1 in zip(taus, taus[1:])):
            raise GeometryError("ellipse delays must be strictly increasing")


@dataclass(frozen=True)
class ScattererPath:
    position: tuple[float, float]
    aod: float
    aoa: float
    r1: float
    r2: float
    degenerate: bool = False


class PathArrays(NamedTuple):
    """Column-wise view of the paths sampled on one ellipse."""

    x: np.ndarray
    y: np.ndarray
    aod: np.ndarray
    aoa: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    degenerate: bool


def ellipse_axes(distance_d, tau):
    """Semi-axes ``(a, b)`` of the confocal ellipse for excess delay `tau`.

    Broadcasts over array inputs.
    """
    ct = SPEED_OF_LIGHT * np.asarray(tau, dtype=float)
    a = 0.5 * (distance_d + ct)
    b = 0.5 * np.sqrt(ct * (ct + 2.0 * distance_d))
    return a, b


def build_ellipses(clusters: ClusterSet, distance_d: float) -> MultiEllipticalStructure:
    if not (distance_d > 0) or not math.isfinite(distance_d):
        raise GeometryError(f"Tx-Rx distance must be > 0, got {distance_d!r}")
    ellipses = []
    for tau, power in zip(clusters.taus, clusters.powers):
        a, b = ellipse_axes(distance_d, tau)
        ellipses.append(Ellipse(float(a), float(b), float(tau), float(power)))
    return MultiEllipticalStructure(float(distance_d), tuple(ellipses), clusters.p0)


def _angles_and_lengths(x, y, distance_d):
    h = 0.5 * distance_d
    r1 = np.hypot(x + h, y)
    r2 = np.hypot(x - h, y)
    aod = np.arctan2(y, x + h)
    aoa = np.arctan2(y, h - x)
    return aod, aoa, r1, r2


def path_geometry(position, distance_d: float) -> tuple[float, float, float, float]:
    """Return ``(aod, aoa, r1, r2)`` for a single scatterer position."""
    if not (distance_d > 0):
        raise GeometryError(f"Tx-Rx distance must be > 0, got {distance_d!r}")
    x, y = (float(v) for v in position)
    aod, aoa, r1, r2 = _angles_and_lengths(x, y, distance_d)
    if r1 == 0 or r2 == 0:
        raise GeometryError(f"scatterer at {position!r} coincides with a focus")
    return float(aod), float(aoa), float(r1), float(r2)


def parametric_angles(k: int) -> np.ndarray:
    """Midpoint-uniform parametric angles ``t_j = -pi + (j + 1/2) 2pi/k``."""
    if k < 1:
        raise GeometryError(f"need at least one scatterer, got k={k}")
    return -np.pi + (np.arange(k) + 0.5) * (2.0 * np.pi / k)


def scatterer_arrays(ellipse: Ellipse, distance_d: float, k: int) -> PathArrays:
    """Vectorised counterpart of :func:`sample_scatterers`."""
    if ellipse.degenerate:
        # Both axis endpoints are the foci: the direct ray, seen from either end.
        x = np.array([ellipse.a, -ellipse.a])
        y = np.zeros(2)
        r1 = np.array([2.0 * ellipse.a, 0.0])
        return PathArrays(x, y, np.zeros(2), np.zeros(2), r1, r1[::-1].copy(), True)
    t = parametric_angles(k)
    x = ellipse.a * np.cos(t)
    y = ellipse.b * np.sin(t)
    aod, aoa, r1, r2 = _angles_and_lengths(x, y, distance_d)
    return PathArrays(x, y, aod, aoa, r1, r2, False)


def sample_scatterers(ellipse: Ellipse, distance_d: float, k: int) -> list[ScattererPath]:
    """Place `k` scatterers on `ellipse` at uniformly spaced parametric angles.

    A degenerate ellipse (``b == 0``) yields its two axis endpoints whatever
    `k` is, each flagged ``degenerate``.
    """
    if k < 1:
        raise GeometryError(f"need at least one scatterer, got k={k}")
    arr = scatterer_arrays(ellipse, distance_d, k)
    return [
        ScattererPath(
            position=(float(arr.x[j]), float(arr.y[j])),
            aod=float(arr.aod[j]),
            aoa=float(arr.aoa[j]),
            r1=float(arr.r1[j]),
            r2=float(arr.r2[j]),
            degenerate=arr.degenerate,
        )
        for j in range(arr.x.size)
    ]
