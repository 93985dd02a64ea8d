"""Deviation measures between path-loss models on a distance grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from omnisynth.synthesis import CiModel, evaluate_ci


@dataclass(frozen=True, eq=False)
class ErrorReport:
    rmse_db: float
    mae_db: float
    grid: np.ndarray

    @property
    def M(self) -> int:
        return int(self.grid.size)


def rmse(residuals) -> float:
    r = np.asarray(residuals, dtype=float)
    return float(np.sqrt(np.mean(r**2)))


def mae(residuals) -> float:
    return float(np.mean(np.abs(np.asarray(residuals, dtype=float))))


def _check_grid(grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise ValueError("comparison grid is empty")
    if np.any(~(grid > 0)):
        raise ValueError("grid distances must be > 0")
    return grid


def compare_models(reference: CiModel, candidate: CiModel, grid) -> ErrorReport:
    """RMSE and MAE between two CI models evaluated on `grid`."""
    grid = _check_grid(grid)
    resid = evaluate_ci(reference, grid) - evaluate_ci(candidate, grid)
    return ErrorReport(rmse(resid), mae(resid), grid)


def compare_points(reference: CiModel, grid, pl_db) -> ErrorReport:
    """Like :func:`compare_models` but against raw per-distance values."""
    grid = _check_grid(grid)
    pl_db = np.asarray(pl_db, dtype=float)
    if pl_db.shape != grid.shape:
        raise ValueError("pl_db must match the grid")
    resid = evaluate_ci(reference, grid) - pl_db
    return ErrorReport(rmse(resid), mae(resid), grid)
