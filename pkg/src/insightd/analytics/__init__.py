"""Computational modules: descriptive stats, frequency counts, correlation,
clustering, and regression over extracted columns."""

from .backend import BACKEND
from .ops import (
    dbscan,
    descriptive,
    freq_comb,
    freq_counts,
    kmeans,
    linreg,
    mean_variance,
    min_max,
    minmax_scale,
    pearson,
    polyreg,
)
from .results import (
    NOISE,
    Correlation,
    Dbscan,
    Descriptive,
    FreqComb,
    FreqCounts,
    KMeans,
    MeanVariance,
    Range,
    Regression,
)

__all__ = [
    "BACKEND",
    "NOISE",
    "Correlation",
    "Dbscan",
    "Descriptive",
    "FreqComb",
    "FreqCounts",
    "KMeans",
    "MeanVariance",
    "Range",
    "Regression",
    "dbscan",
    "descriptive",
    "freq_comb",
    "freq_counts",
    "kmeans",
    "linreg",
    "mean_variance",
    "min_max",
    "minmax_scale",
    "pearson",
    "polyreg",
]
