"""Warping-path descriptors, banded DTW, simulation sweeps, and pairwise
connectivity for time series."""

from .connectivity import (ChannelSet, PairMetricsMatrix, group_display_matrix,
                           pair_matrices, preprocess_channels,
                           symptom_association)
from .dtw import (AlignmentResult, DtwParams, TimeSeries, WarpPath, dtw_align,
                  path_cost, pointwise_cost)
from .errors import (BandTooNarrow, ConstraintViolation, EmptyInput,
                     FlaggedChannelError, InvalidInput, RankDeficient,
                     WarpQuantError)
from .metrics import (MEASURE_NAMES, WqaReport, compute_cwd, compute_dcr,
                      compute_drl, compute_report, compute_wdr, compute_wdv,
                      warp_deviation)
from .signals import (BandLimits, ScenarioInstance, ScenarioSpec, WarpField,
                      default_grid, gen_bandlimited_gaussian,
                      interp_monotone_cubic, make_scenario, warp_resample)
from .stats import (LinearModelFit, bh_fdr, ols_fit, percentile_ci, rmse,
                    t_cdf, zscore)
from .sweep import SweepResult, SweepSpec, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult", "BandLimits", "BandTooNarrow", "ChannelSet",
    "ConstraintViolation", "DtwParams", "EmptyInput", "FlaggedChannelError",
    "InvalidInput", "LinearModelFit", "MEASURE_NAMES", "PairMetricsMatrix",
    "RankDeficient", "ScenarioInstance", "ScenarioSpec", "SweepResult",
    "SweepSpec", "TimeSeries", "WarpField", "WarpPath", "WarpQuantError",
    "WqaReport", "bh_fdr", "compute_cwd", "compute_dcr", "compute_drl",
    "compute_report", "compute_wdr", "compute_wdv", "default_grid",
    "dtw_align", "gen_bandlimited_gaussian", "group_display_matrix",
    "interp_monotone_cubic", "make_scenario", "ols_fit", "pair_matrices",
    "path_cost", "percentile_ci", "pointwise_cost", "preprocess_channels",
    "rmse", "run_sweep", "symptom_association", "t_cdf", "warp_deviation",
    "warp_resample", "zscore",
]
