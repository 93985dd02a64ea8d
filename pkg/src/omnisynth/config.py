"""Scenario configuration files (YAML) and their validation.

Every problem found is reported with the dotted path of the offending key,
e.g. ``antenna.tx.hpbw_deg``, so a single ``check`` lists all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from omnisynth.antenna import AntennaPattern
from omnisynth.pdp import PdpError, extract_clusters, load_pdp, scale_normalized_taps
from omnisynth.synthesis import DEFAULT_SCATTERERS, CiModel, SynthesisScenario, distance_grid, free_space_pl
from omnisynth.pas import DEFAULT_M_PHI

DEFAULT_GAMMA = {"LOS": 20.0, "NLOS": 0.0}


class ConfigError(ValueError):
    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


@dataclass
class AntennaConfig:
    kind: str = "isotropic"
    hpbw_deg: float | None = None
    gain_dbi: float = 0.0
    boresight_deg: float = 0.0

    def pattern(self) -> AntennaPattern:
        if self.kind == "isotropic":
            return AntennaPattern("isotropic", None, self.gain_dbi, math.radians(self.boresight_deg))
        return AntennaPattern.sinc(self.hpbw_deg, self.gain_dbi, self.boresight_deg)


@dataclass
class ReferenceModelConfig:
    n: float
    d0_m: float = 1.0
    pl_d0_db: float | None = None

    def model(self, frequency_hz: float) -> CiModel:
        pl0 = self.pl_d0_db if self.pl_d0_db is not None else free_space_pl(frequency_hz, self.d0_m)
        return CiModel(self.d0_m, pl0, self.n, 0.0, frequency_hz)


@dataclass
class ScenarioConfig:
    name: str
    frequency_ghz: float
    d_min_m: float
    d_max_m: float
    d_step_m: float
    directional: ReferenceModelConfig
    tx: AntennaConfig
    rx: AntennaConfig
    pdp: dict[str, Any]
    gamma: float
    condition: str | None = None
    m_phi: int = DEFAULT_M_PHI
    scatterers: int = DEFAULT_SCATTERERS
    power_floor_db: float | None = -40.0
    free_intercept: bool = False
    reference: ReferenceModelConfig | None = None
    raw: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def frequency_hz(self) -> float:
        return self.frequency_ghz * 1e9

    def distances(self) -> np.ndarray:
        return distance_grid(self.d_min_m, self.d_max_m, self.d_step_m)

    def power_delay_profile(self):
        label = str(self.pdp.get("label", ""))
        if "taps" in self.pdp:
            rows = [(t["delay_ns"], t["power_db"]) for t in self.pdp["taps"]]
            return load_pdp(rows, delay_unit="ns", power_unit="db", label=label)
        norm = self.pdp["normalized_taps"]
        return scale_normalized_taps(
            norm["delays"], norm["powers_db"], norm["rms_delay_spread_ns"] * 1e-9, label=label
        )

    def scenario(self) -> SynthesisScenario:
        return SynthesisScenario(
            frequency=self.frequency_hz,
            distances=self.distances(),
            directional_model=self.directional.model(self.frequency_hz),
            tx_pattern=self.tx.pattern(),
            rx_pattern=self.rx.pattern(),
            clusters=extract_clusters(self.power_delay_profile(), self.power_floor_db),
            gamma=self.gamma,
            m_phi=self.m_phi,
            scatterers=self.scatterers,
            free_intercept=self.free_intercept,
            label=self.name,
        )

    def reference_model(self) -> CiModel | None:
        return None if self.reference is None else self.reference.model(self.frequency_hz)


class _Reader:
    """Pulls typed values out of nested mappings, collecting diagnostics."""

    def __init__(self):
        self.errors: list[Diagnostic] = []

    def err(self, path, msg):
        self.errors.append(Diagnostic(path, msg))

    def section(self, data, key, path, required=True):
        value = data.get(key) if isinstance(data, dict) else None
        if value is None:
            if required:
                self.err(path, "missing section")
            return None
        if not isinstance(value, dict):
            self.err(path, "expected a mapping")
            return None
        return value

    def number(self, data, key, path, *, required=True, default=None, positive=False, nonneg=False, integer=False):
        if data is None:
            return default
        value = data.get(key)
        if value is None:
            if required:
                self.err(path, "missing value")
            return default
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.err(path, f"expected a number, got {value!r}")
            return default
        if not math.isfinite(value):
            self.err(path, "must be finite")
            return default
        if integer and int(value) != value:
            self.err(path, f"expected an integer, got {value!r}")
            return default
        if positive and not value > 0:
            self.err(path, f"must be > 0, got {value!r}")
            return default
        if nonneg and not value >= 0:
            self.err(path, f"must be >= 0, got {value!r}")
            return default
        return int(value) if integer else float(value)


def _read_antenna(r: _Reader, data, path) -> AntennaConfig:
    if data is None:
        return AntennaConfig()
    kind = data.get("kind", "isotropic")
    if kind not in ("isotropic", "sinc"):
        r.err(f"{path}.kind", f"unknown pattern kind {kind!r}; expected 'isotropic' or 'sinc'")
        kind = "isotropic"
    hpbw = r.number(data, "hpbw_deg", f"{path}.hpbw_deg", required=(kind == "sinc"), positive=True)
    if hpbw is not None and hpbw >= 180:
        r.err(f"{path}.hpbw_deg", f"must be < 180, got {hpbw!r}")
        hpbw = None
    gain = r.number(data, "gain_dbi", f"{path}.gain_dbi", required=False, default=0.0)
    bore = r.number(data, "boresight_deg", f"{path}.boresight_deg", required=False, default=0.0)
    if kind == "sinc" and hpbw is None:
        kind = "isotropic"
    return AntennaConfig(kind, hpbw, gain, bore)


def _read_model(r: _Reader, data, path) -> ReferenceModelConfig | None:
    if data is None:
        return None
    n = r.number(data, "n", f"{path}.n")
    d0 = r.number(data, "d0_m", f"{path}.d0_m", required=False, default=1.0, positive=True)
    pl0 = r.number(data, "pl_d0_db", f"{path}.pl_d0_db", required=False)
    if n is None:
        return None
    return ReferenceModelConfig(n, d0, pl0)


def _check_pdp(r: _Reader, data) -> dict[str, Any]:
    if data is None:
        return {}
    has_taps, has_norm = "taps" in data, "normalized_taps" in data
    if has_taps and has_norm:
        r.err("pdp", "'taps' and 'normalized_taps' are mutually exclusive pdp forms")
        return {}
    if not (has_taps or has_norm):
        r.err("pdp", "needs either 'taps' or 'normalized_taps'")
        return {}
    if has_taps:
        taps = data["taps"]
        if not isinstance(taps, list) or not taps:
            r.err("pdp.taps", "expected a non-empty list of {delay_ns, power_db}")
            return {}
        for i, tap in enumerate(taps):
            if not isinstance(tap, dict):
                r.err(f"pdp.taps[{i}]", "expected a mapping with delay_ns and power_db")
                continue
            r.number(tap, "delay_ns", f"pdp.taps[{i}].delay_ns", nonneg=True)
            r.number(tap, "power_db", f"pdp.taps[{i}].power_db")
    else:
        norm = r.section(data, "normalized_taps", "pdp.normalized_taps")
        if norm is None:
            return {}
        r.number(norm, "rms_delay_spread_ns", "pdp.normalized_taps.rms_delay_spread_ns", positive=True)
        delays, powers = norm.get("delays"), norm.get("powers_db")
        for key, seq in (("delays", delays), ("powers_db", powers)):
            if not isinstance(seq, list) or not seq:
                r.err(f"pdp.normalized_taps.{key}", "expected a non-empty list of numbers")
            elif not all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in seq):
                r.err(f"pdp.normalized_taps.{key}", "all entries must be finite numbers")
        if isinstance(delays, list) and isinstance(powers, list) and len(delays) != len(powers):
            r.err("pdp.normalized_taps", f"delays ({len(delays)}) and powers_db ({len(powers)}) differ in length")
        if isinstance(delays, list) and any(isinstance(v, (int, float)) and v < 0 for v in delays):
            r.err("pdp.normalized_taps.delays", "delays must be >= 0")
    return data


def parse_config(data: Any) -> tuple[ScenarioConfig | None, list[Diagnostic]]:
    """Validate a decoded config mapping; returns the config only when clean."""
    r = _Reader()
    if not isinstance(data, dict):
        return None, [Diagnostic("<root>", "config must be a mapping")]

    name = str(data.get("scenario", "unnamed"))
    freq = r.number(data, "frequency_ghz", "frequency_ghz", positive=True)

    dist = r.section(data, "distance", "distance")
    d_min = r.number(dist, "min_m", "distance.min_m", positive=True)
    d_max = r.number(dist, "max_m", "distance.max_m", positive=True)
    d_step = r.number(dist, "step_m", "distance.step_m", positive=True)
    if None not in (d_min, d_max, d_step):
        try:
            distance_grid(d_min, d_max, d_step)
        except ValueError as exc:
            r.err("distance", str(exc))

    directional = _read_model(r, r.section(data, "directional_model", "directional_model"), "directional_model")

    ant = r.section(data, "antenna", "antenna")
    tx = _read_antenna(r, r.section(ant, "tx", "antenna.tx") if ant else None, "antenna.tx")
    rx = _read_antenna(r, r.section(ant, "rx", "antenna.rx") if ant else None, "antenna.rx")

    pdp = _check_pdp(r, r.section(data, "pdp", "pdp"))

    condition = data.get("condition")
    if condition is not None and condition not in DEFAULT_GAMMA:
        r.err("condition", f"expected one of {sorted(DEFAULT_GAMMA)}, got {condition!r}")
        condition = None
    gamma = r.number(data, "gamma", "gamma", required=False, nonneg=True)
    if gamma is None:
        gamma = DEFAULT_GAMMA.get(condition, 0.0)

    num = r.section(data, "numerics", "numerics", required=False) or {}
    m_phi = r.number(num, "m_phi", "numerics.m_phi", required=False, default=DEFAULT_M_PHI, positive=True, integer=True)
    k = r.number(num, "scatterers", "numerics.scatterers", required=False, default=DEFAULT_SCATTERERS, positive=True, integer=True)
    floor = r.number(num, "power_floor_db", "numerics.power_floor_db", required=False, default=-40.0)
    if m_phi is not None and m_phi < 2:
        r.err("numerics.m_phi", "must be >= 2")

    fit = r.section(data, "fit", "fit", required=False) or {}
    free_intercept = fit.get("free_intercept", False)
    if not isinstance(free_intercept, bool):
        r.err("fit.free_intercept", "expected true or false")
        free_intercept = False

    reference = _read_model(r, r.section(data, "reference_model", "reference_model", required=False), "reference_model")

    if r.errors:
        return None, r.errors

    cfg = ScenarioConfig(
        name=name,
        frequency_ghz=freq,
        d_min_m=d_min,
        d_max_m=d_max,
        d_step_m=d_step,
        directional=directional,
        tx=tx,
        rx=rx,
        pdp=pdp,
        gamma=gamma,
        condition=condition,
        m_phi=m_phi,
        scatterers=k,
        power_floor_db=floor,
        free_intercept=free_intercept,
        reference=reference,
        raw=data,
    )
    # Catch tap-level problems (duplicates etc.) that need the full table.
    try:
        cfg.power_delay_profile()
    except PdpError as exc:
        return None, [Diagnostic("pdp", str(exc))]
    return cfg, []


def read_config_file(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return yaml.safe_load(fh)


def load_config(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario file, raising :class:`ConfigError` on any problem."""
    try:
        data = read_config_file(path)
    except yaml.YAMLError as exc:
        raise ConfigError([Diagnostic("<file>", f"not valid YAML: {exc}")]) from exc
    cfg, diags = parse_config(data)
    if diags:
        raise ConfigError(diags)
    return cfg
