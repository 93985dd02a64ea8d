"""Power-delay profile ingestion and cluster extraction."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

logger = logging.getLogger(__name__)

_DELAY_SCALE = {"s": 1.0, "ns": 1e-9, "us": 1e-6}


class PdpError(ValueError):
    """Raised for malformed tap tables."""


@dataclass(frozen=True)
class Tap:
    delay: float  # seconds
    power: float  # linear, relative units

    def __post_init__(self):
        if not math.isfinite(self.delay) or self.delay < 0:
            raise PdpError(f"tap delay must be finite and >= 0, got {self.delay!r}")
        if not math.isfinite(self.power) or self.power <= 0:
            raise PdpError(f"tap power must be finite and > 0, got {self.power!r}")


@dataclass(frozen=True)
class PowerDelayProfile:
    taps: tuple[Tap, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.taps) == 0:
            raise PdpError("a power-delay profile needs at least one tap")
        delays = [t.delay for t in self.taps]
        for i in range(1, len(delays)):
            if delays[i] <= delays[i - 1]:
                raise PdpError("tap delays must be strictly increasing")

    @property
    def delays(self) -> np.ndarray:
        return np.array([t.delay for t in self.taps])

    @property
    def powers(self) -> np.ndarray:
        return np.array([t.power for t in self.taps])

    def total_power(self) -> float:
        return math.fsum(t.power for t in self.taps)


@dataclass(frozen=True)
class ClusterSet:
    """Delayed clusters ``(tau_i, P_i)`` plus the zero-delay local power ``p0``."""

    taus: tuple[float, ...] = ()
    powers: tuple[float, ...] = ()
    p0: float = 0.0

    def __post_init__(self):
        if len(self.taus) != len(self.powers):
            raise PdpError("taus and powers must have equal length")
        if any(not (t > 0) for t in self.taus):
            raise PdpError("cluster delays must be > 0")
        if any(b <= a for a, b in zip(self.taus, self.taus[1:])):
            raise PdpError("cluster delays must be strictly increasing")
        if any(not (p >= 0) for p in self.powers) or not (self.p0 >= 0):
            raise PdpError("cluster powers must be >= 0")
        if self.p0 + math.fsum(self.powers) <= 0:
            raise PdpError("cluster set carries no power")

    @property
    def n_clusters(self) -> int:
        return len(self.taus)

    def total_power(self) -> float:
        return self.p0 + math.fsum(self.powers)


def _build_pdp(delays, powers, label) -> PowerDelayProfile:
    order = np.argsort(delays, kind="stable")
    sorted_delays = np.asarray(delays)[order]
    dup = np.nonzero(np.diff(sorted_delays) == 0)[0]
    if dup.size:
        rows = sorted((int(order[dup[0]]), int(order[dup[0] + 1])))
        raise PdpError(f"duplicate delay {sorted_delays[dup[0]]!r} s in rows {rows[0]} and {rows[1]}")
    taps = tuple(Tap(float(delays[i]), float(powers[i])) for i in order)
    return PowerDelayProfile(taps, label)


def load_pdp(
    source: Iterable[Sequence[float] | Mapping[str, float]],
    *,
    delay_unit: str = "ns",
    power_unit: str = "db",
    label: str = "",
) -> PowerDelayProfile:
    """Build a profile from a table of ``(delay, power)`` rows.

    Rows may be pairs or mappings with ``delay``/``power`` keys. Powers in
    ``"db"`` are converted to linear; the result is sorted by delay.
    """
    if delay_unit not in _DELAY_SCALE:
        raise PdpError(f"unknown delay unit {delay_unit!r}")
    if power_unit not in ("db", "linear"):
        raise PdpError(f"unknown power unit {power_unit!r}")

    delays, powers = [], []
    for i, row in enumerate(source):
        try:
            if isinstance(row, Mapping):
                d, p = row["delay"], row["power"]
            else:
                d, p = row
            d, p = float(d), float(p)
        except (KeyError, TypeError, ValueError) as exc:
            raise PdpError(f"row {i}: cannot read (delay, power) from {row!r}") from exc
        if not (math.isfinite(d) and math.isfinite(p)):
            raise PdpError(f"row {i}: non-finite value in {row!r}")
        d *= _DELAY_SCALE[delay_unit]
        p = 10.0 ** (p / 10.0) if power_unit == "db" else p
        if d < 0 or p <= 0:
            raise PdpError(f"row {i}: delay must be >= 0 and power > 0, got {row!r}")
        delays.append(d)
        powers.append(p)
    if not delays:
        raise PdpError("empty tap table")
    return _build_pdp(np.array(delays), np.array(powers), label)


def scale_normalized_taps(
    normalized_delays: Sequence[float],
    powers_db: Sequence[float],
    rms_delay_spread: float,
    label: str = "",
) -> PowerDelayProfile:
    """Scale a TDL-style table: ``delay_k = normalized_delay_k * rms_delay_spread``.

    `rms_delay_spread` is in seconds; powers are in dB.
    """
    if len(normalized_delays) != len(powers_db):
        raise PdpError(
            f"normalized delays ({len(normalized_delays)}) and powers ({len(powers_db)}) differ in length"
        )
    if not (rms_delay_spread > 0) or not math.isfinite(rms_delay_spread):
        raise PdpError(f"rms delay spread must be > 0, got {rms_delay_spread!r}")
    rows = [(float(d) * rms_delay_spread, p) for d, p in zip(normalized_delays, powers_db)]
    return load_pdp(rows, delay_unit="s", power_unit="db", label=label)


def extract_clusters(pdp: PowerDelayProfile, power_floor_db: float | None = -40.0) -> ClusterSet:
    """Map the zero-delay tap to ``p0`` and every delayed tap to one cluster.

    Taps weaker than `power_floor_db` relative to the strongest tap are
    dropped with a warning; pass ``None`` to keep everything.
    """
    taps = pdp.taps
    if power_floor_db is not None:
        floor = max(t.power for t in taps) * 10.0 ** (power_floor_db / 10.0)
        kept = tuple(t for t in taps if t.power >= floor)
        if len(kept) < len(taps):
            logger.warning(
                "dropped %d tap(s) below %.1f dB relative to the strongest tap",
                len(taps) - len(kept),
                power_floor_db,
            )
        taps = kept

    p0 = math.fsum(t.power for t in taps if t.delay == 0)
    delayed = [t for t in taps if t.delay > 0]
    return ClusterSet(
        taus=tuple(t.delay for t in delayed),
        powers=tuple(t.power for t in delayed),
        p0=p0,
    )
