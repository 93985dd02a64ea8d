"""Bundled scenario files (38/73 GHz, LOS/NLOS)."""

from importlib import resources
from pathlib import Path

NAMES = ("38ghz_los", "38ghz_nlos", "73ghz_los", "73ghz_nlos")


def scenario_path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown bundled scenario {name!r}; choose from {', '.join(NAMES)}")
    return Path(str(resources.files(__name__).joinpath(f"{name}.yaml")))


def bundled_scenarios() -> dict[str, Path]:
    return {name: scenario_path(name) for name in NAMES}
