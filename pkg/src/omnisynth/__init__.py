"""Synthesis of omnidirectional path-loss models from directional ones
using a multi-elliptical scattering geometry."""

from omnisynth.antenna import AntennaPattern, solve_first_null
from omnisynth.estimator import CloseInRegressor, OmniPathLossSynthesizer
from omnisynth.geometry import (
    Ellipse,
    MultiEllipticalStructure,
    ScattererPath,
    build_ellipses,
    path_geometry,
    sample_scatterers,
)
from omnisynth.metrics import ErrorReport, compare_models, compare_points
from omnisynth.pas import (
    AngularPowerSpectrum,
    azimuth_grid,
    cluster_pas,
    local_scatter_pas,
    received_power,
    total_pas,
    von_mises_pdf,
)
from omnisynth.pdp import (
    ClusterSet,
    PowerDelayProfile,
    Tap,
    extract_clusters,
    load_pdp,
    scale_normalized_taps,
)
from omnisynth.synthesis import (
    CiModel,
    SynthesisResult,
    SynthesisScenario,
    evaluate_ci,
    fit_ci,
    free_space_pl,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AngularPowerSpectrum",
    "AntennaPattern",
    "CiModel",
    "CloseInRegressor",
    "ClusterSet",
    "Ellipse",
    "ErrorReport",
    "MultiEllipticalStructure",
    "OmniPathLossSynthesizer",
    "PowerDelayProfile",
    "ScattererPath",
    "SynthesisResult",
    "SynthesisScenario",
    "Tap",
    "azimuth_grid",
    "build_ellipses",
    "cluster_pas",
    "compare_models",
    "compare_points",
    "evaluate_ci",
    "extract_clusters",
    "fit_ci",
    "free_space_pl",
    "load_pdp",
    "local_scatter_pas",
    "path_geometry",
    "received_power",
    "sample_scatterers",
    "scale_normalized_taps",
    "solve_first_null",
    "synthesize",
    "total_pas",
    "von_mises_pdf",
]
