"""Extreme-value analysis of river water-level series."""

__version__ = "0.1.0"

from .crest import CrestSeries, ExcessSample, excesses, extract_crests
from .dist import (
    DistributionModel,
    EmpiricalDistribution,
    cdf,
    empirical,
    empirical_cdf,
    empirical_quantile,
    pdf,
    quantile,
    survival,
)
from .fitgof import (
    QQPlot,
    TailFit,
    fit_mle_weibull,
    fit_qq_regression,
    linearity,
    qq_points,
    select_family,
)
from .ingest import (
    WaterLevelSeries,
    cumulative_histogram,
    detect_change_point,
    deviation_series,
    histogram,
    parse_series,
    read_series,
    split_segments,
)
from .risk import (
    RiskTable,
    exceedance_probability,
    reconstruct_threshold,
    return_period_days,
    risk_table,
)
from .theta import (
    ThetaCurve,
    ThetaEstimate,
    declustering_threshold,
    exceedance_record,
    interexceedance_estimator,
    runs_estimator,
    theta_sweep,
)
