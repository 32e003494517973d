"""Continuum-robot backbone modeling and modal coefficient identification.

Backbone shapes are generated from Chebyshev modal curvature coefficients
and identified automatically by a two-objective evolutionary search against
a target configuration (shape deviation + TCP tangent deviation).
"""

__version__ = "0.1.0"

from .backbone import (
    BackboneCurve,
    Frame,
    MODE_CHAINED,
    MODE_CHORD,
    apply_motion_step,
    integrate_backbone,
    sample_divisions,
    tcp,
)
from .basis import CoefficientSet, chebyshev_eval, curvature_distribution
from .evolution import (
    EAConfig,
    GenerationStats,
    Individual,
    RunResult,
    best_individual,
    crowding_distance,
    init_population,
    nondominated_sort,
    polynomial_mutation,
    run,
    sbx_crossover,
)
from .objectives import FitnessPair, evaluate, mse_shape, mse_tcp
from .report import ReportBundle, ols_trend, render_charts, write_report, write_stats
from .targets import TargetConfiguration, load_target, save_target, synth_target

__all__ = [
    "BackboneCurve",
    "CoefficientSet",
    "EAConfig",
    "FitnessPair",
    "Frame",
    "GenerationStats",
    "Individual",
    "MODE_CHAINED",
    "MODE_CHORD",
    "ReportBundle",
    "RunResult",
    "TargetConfiguration",
    "apply_motion_step",
    "best_individual",
    "chebyshev_eval",
    "crowding_distance",
    "curvature_distribution",
    "evaluate",
    "init_population",
    "integrate_backbone",
    "load_target",
    "mse_shape",
    "mse_tcp",
    "nondominated_sort",
    "ols_trend",
    "polynomial_mutation",
    "render_charts",
    "run",
    "sample_divisions",
    "save_target",
    "sbx_crossover",
    "synth_target",
    "tcp",
    "write_report",
    "write_stats",
]
