"""Azimuth antenna patterns: isotropic and a half-power-calibrated sinc lobe."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class AntennaError(ValueError):
    pass


def wrap_angle(phi):
    """Wrap angles into ``[-pi, pi)``."""
    return np.mod(np.asarray(phi, dtype=float) + np.pi, 2.0 * np.pi) - np.pi


@lru_cache(maxsize=None)
def _sinc_half_power_argument(tol: float = 1e-15) -> float:
    # sin(x)/x decreases monotonically on (0, pi); bisect sinc^2(x) = 1/2.
    lo, hi = 1e-3, math.pi - 1e-3
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (math.sin(mid) / mid) ** 2 > 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_first_null(hpbw: float) -> float:
    """First-null offset ``u0`` (rad) of a sinc^2 lobe with the given HPBW (rad)."""
    if not (0 < hpbw < math.pi):
        raise AntennaError(f"hpbw must lie in (0, pi) rad, got {hpbw!r}")
    return math.pi * (0.5 * hpbw) / _sinc_half_power_argument()


@dataclass(frozen=True)
class AntennaPattern:
    """Peak-normalised azimuth pattern.

    ``peak_gain_dbi`` is carried for reporting only; :meth:`gain` always
    peaks at 1 so only the spatial filtering of the beam matters.
    """

    kind: str = "isotropic"
    hpbw: float | None = None  # rad
    peak_gain_dbi: float = 0.0
    boresight: float = 0.0  # rad

    def __post_init__(self):
        if self.kind not in ("isotropic", "sinc"):
            raise AntennaError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "sinc" and (self.hpbw is None or not (0 < self.hpbw < math.pi)):
            raise AntennaError(f"sinc pattern needs 0 < hpbw < pi, got {self.hpbw!r}")

    @classmethod
    def isotropic(cls) -> "AntennaPattern":
        return cls("isotropic")

    @classmethod
    def sinc(cls, hpbw_deg: float, peak_gain_dbi: float = 0.0, boresight_deg: float = 0.0) -> "AntennaPattern":
        return cls("sinc", math.radians(hpbw_deg), peak_gain_dbi, math.radians(boresight_deg))

    @property
    def is_isotropic(self) -> bool:
        return self.kind == "isotropic"

    @property
    def first_null(self) -> float:
        if self.is_isotropic:
            return math.inf
        return solve_first_null(self.hpbw)

    def gain(self, phi):
        """Linear gain at azimuth `phi` (scalar or array, radians)."""
        phi = np.asarray(phi, dtype=float)
        if self.is_isotropic:
            out = np.ones_like(phi)
        else:
            u0 = self.first_null
            u = wrap_angle(phi - self.boresight)
            out = np.where(np.abs(u) < u0, np.sinc(u / u0) ** 2, 0.0)
        return out if out.ndim else float(out)


def gain(pattern: AntennaPattern, phi):
    return pattern.gain(phi)
