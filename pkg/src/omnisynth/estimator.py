"""scikit-learn style wrappers around close-in fitting and omni synthesis.

Distances play the role of ``X`` (shape ``(n,)`` or ``(n, 1)``) and path
loss in dB the role of ``y``, so both estimators drop into pipelines,
``clone`` and grid searches.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_consistent_length, check_is_fitted

from omnisynth.antenna import AntennaPattern
from omnisynth.pdp import ClusterSet
from omnisynth.synthesis import (
    DEFAULT_SCATTERERS,
    CiModel,
    SynthesisScenario,
    evaluate_ci,
    fit_ci,
    free_space_pl,
    received_powers,
    synthesize,
)
from omnisynth.pas import DEFAULT_M_PHI, azimuth_grid, local_scatter_pas


def check_distances(X) -> np.ndarray:
    """Validate a distance column and return it as a flat float array."""
    X = check_array(X, ensure_2d=False, dtype=np.float64)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single distance column, got shape {X.shape}")
        X = X[:, 0]
    if np.any(X <= 0):
        raise ValueError("distances must be > 0")
    return X


class CloseInRegressor(RegressorMixin, BaseEstimator):
    """Least-squares close-in path-loss model.

    Parameters
    ----------
    ref_distance : float
        Close-in reference distance in metres.
    frequency : float or None
        Carrier in Hz; anchors the intercept at free-space loss.
    pl_at_d0 : float or None
        Explicit intercept in dB; overrides the free-space anchor.
    fit_intercept : bool
        Estimate the intercept as well instead of anchoring it.
    """

    def __init__(self, ref_distance=1.0, frequency=None, pl_at_d0=None, fit_intercept=False):
        self.ref_distance = ref_distance
        self.frequency = frequency
        self.pl_at_d0 = pl_at_d0
        self.fit_intercept = fit_intercept

    def fit(self, X, y):
        d = check_distances(X)
        y = check_array(y, ensure_2d=False, dtype=np.float64)
        check_consistent_length(d, y)
        if not self.fit_intercept and self.frequency is None and self.pl_at_d0 is None:
            raise ValueError("anchored fit needs frequency or pl_at_d0")
        self.model_ = fit_ci(
            np.column_stack([d, y]),
            self.ref_distance,
            self.frequency,
            free_intercept=self.fit_intercept,
            pl_at_d0=self.pl_at_d0,
        )
        self.ple_ = self.model_.ple_n
        self.intercept_ = self.model_.pl_at_d0
        self.sigma_ = self.model_.sigma
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        return np.asarray(evaluate_ci(self.model_, check_distances(X)), dtype=float)


class OmniPathLossSynthesizer(TransformerMixin, BaseEstimator):
    """Synthesise an omnidirectional CI model from a directional one.

    ``fit`` runs the full per-distance correction over the distance grid in
    ``X`` and fits the omni model; ``transform`` returns the per-distance
    table ``[pl_direct_db, correction_db, pl_omni_db]`` for any distances;
    ``predict`` evaluates the fitted omni model.
    """

    def __init__(
        self,
        frequency=38e9,
        ple_direct=2.0,
        clusters=None,
        tx_pattern=None,
        rx_pattern=None,
        gamma=0.0,
        ref_distance=1.0,
        pl_at_d0=None,
        m_phi=DEFAULT_M_PHI,
        scatterers=DEFAULT_SCATTERERS,
        fit_intercept=False,
    ):
        self.frequency = frequency
        self.ple_direct = ple_direct
        self.clusters = clusters
        self.tx_pattern = tx_pattern
        self.rx_pattern = rx_pattern
        self.gamma = gamma
        self.ref_distance = ref_distance
        self.pl_at_d0 = pl_at_d0
        self.m_phi = m_phi
        self.scatterers = scatterers
        self.fit_intercept = fit_intercept

    def _directional_model(self) -> CiModel:
        pl0 = self.pl_at_d0
        if pl0 is None:
            pl0 = free_space_pl(self.frequency, self.ref_distance)
        return CiModel(self.ref_distance, pl0, self.ple_direct, 0.0, self.frequency)

    def _scenario(self, distances) -> SynthesisScenario:
        return SynthesisScenario(
            frequency=self.frequency,
            distances=distances,
            directional_model=self._directional_model(),
            tx_pattern=self.tx_pattern if self.tx_pattern is not None else AntennaPattern.isotropic(),
            rx_pattern=self.rx_pattern if self.rx_pattern is not None else AntennaPattern.isotropic(),
            clusters=self.clusters if self.clusters is not None else ClusterSet(p0=1.0),
            gamma=self.gamma,
            m_phi=self.m_phi,
            scatterers=self.scatterers,
            free_intercept=self.fit_intercept,
        )

    def fit(self, X, y=None):
        d = check_distances(X)
        self.result_ = synthesize(self._scenario(d))
        self.omni_model_ = self.result_.omni_model
        self.ple_ = self.omni_model_.ple_n
        self.sigma_ = self.omni_model_.sigma
        return self

    def transform(self, X):
        check_is_fitted(self, "result_")
        d = check_distances(X)
        scenario = self.result_.scenario
        local = local_scatter_pas(scenario.clusters.p0, scenario.gamma, azimuth_grid(scenario.m_phi))
        pl_direct = np.asarray(evaluate_ci(scenario.directional_model, d), dtype=float)
        corr = np.empty_like(d)
        for j, dj in enumerate(d):
            p_direct, p_omni = received_powers(scenario, float(dj), local)
            corr[j] = -10.0 * np.log10(p_omni / p_direct)
        return np.column_stack([pl_direct, corr, pl_direct + corr])

    def predict(self, X):
        check_is_fitted(self, "omni_model_")
        return np.asarray(evaluate_ci(self.omni_model_, check_distances(X)), dtype=float)
