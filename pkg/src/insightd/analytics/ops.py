"""The computational modules: pure functions from column data to results.

Every operation raises TooFewValues / ZeroVariance / SingularSystem instead
of returning degenerate numbers; the scheduler turns those into silent
skips so one undersized column never pollutes the feed.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

import numpy as np

from ..errors import LengthMismatch, SingularSystem, TooFewValues, ZeroVariance
from . import backend
from .results import Correlation, Dbscan, Descriptive, FreqComb, FreqCounts, KMeans, MeanVariance, Range, Regression

MAX_LLOYD_ITERATIONS = 100

Point = tuple[float, float]


def mean_variance(xs: Sequence[float]) -> MeanVariance:
    """Mean and sample (n-1) variance."""
    n = len(xs)
    if n < 2:
        raise TooFewValues(f"need at least 2 values, got {n}")
    mean = math.fsum(xs) / n
    variance = math.fsum((x - mean) ** 2 for x in xs) / (n - 1)
    return MeanVariance(mean=mean, variance=variance, n=n)


def min_max(xs: Sequence[float]) -> Range:
    if not xs:
        raise TooFewValues("need at least 1 value")
    return Range(min=min(xs), max=max(xs))


def descriptive(xs: Sequence[float]) -> Descriptive:
    """Merged single-field summary (mean/variance + range)."""
    mv = mean_variance(xs)
    rng = min_max(xs)
    return Descriptive(mean=mv.mean, variance=mv.variance, n=mv.n, min=rng.min, max=rng.max)


def freq_counts(cats: Sequence[str]) -> FreqCounts:
    """Exact category counts; ties broken by lexicographic label order."""
    if not cats:
        raise TooFewValues("need at least 1 label")
    counts = Counter(cats)
    most = min(counts, key=lambda c: (-counts[c], c))
    least = min(counts, key=lambda c: (counts[c], c))
    return FreqCounts(counts=dict(counts), most=most, least=least)


def freq_comb(a: Sequence[str], b: Sequence[str]) -> FreqComb:
    """Co-occurrence counts of two aligned label columns."""
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} labels")
    if not a:
        raise TooFewValues("need at least 1 label pair")
    matrix = Counter(zip(a, b))
    argmax = min(matrix, key=lambda cell: (-matrix[cell], cell))
    return FreqComb(matrix=dict(matrix), argmax=argmax)


def pearson(pairs: Sequence[Point]) -> Correlation:
    """Pearson product-moment correlation."""
    n = len(pairs)
    if n < 3:
        raise TooFewValues(f"need at least 3 pairs, got {n}")
    mx = math.fsum(x for x, _ in pairs) / n
    my = math.fsum(y for _, y in pairs) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pairs)
    syy = math.fsum((y - my) ** 2 for _, y in pairs)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("a coordinate is constant")
    sxy = math.fsum((x - mx) * (y - my) for x, y in pairs)
    return Correlation(rho=sxy / math.sqrt(sxx * syy), n=n)


def linreg(pairs: Sequence[Point]) -> Regression:
    """Ordinary least squares line; coefficients are [intercept, slope]."""
    n = len(pairs)
    if n < 3:
        raise TooFewValues(f"need at least 3 pairs, got {n}")
    mx = math.fsum(x for x, _ in pairs) / n
    my = math.fsum(y for _, y in pairs) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pairs)
    if sxx == 0.0:
        raise ZeroVariance("x is constant")
    sxy = math.fsum((x - mx) * (y - my) for x, y in pairs)
    slope = sxy / sxx
    intercept = my - slope * mx
    residuals = [y - (intercept + slope * x) for x, y in pairs]
    ss_res = math.fsum(r * r for r in residuals)
    syy = math.fsum((y - my) ** 2 for _, y in pairs)
    r2 = 1.0 - ss_res / syy if syy > 0.0 else 0.0
    return Regression(degree=1, coefficients=(intercept, slope), rmse=math.sqrt(ss_res / n), r2=r2)


def polyreg(pairs: Sequence[Point], degree: int) -> Regression:
    """Polynomial least squares via a stable solve; coefficients constant-first."""
    if degree not in (2, 3):
        raise ValueError(f"degree must be 2 or 3, got {degree}")
    n = len(pairs)
    if n < degree + 2:
        raise TooFewValues(f"need at least {degree + 2} pairs, got {n}")
    x = np.array([p[0] for p in pairs], dtype=np.float64)
    y = np.array([p[1] for p in pairs], dtype=np.float64)
    vander = np.vander(x, N=degree + 1, increasing=True)
    coeffs, _, rank, _ = np.linalg.lstsq(vander, y, rcond=None)
    if rank < degree + 1:
        raise SingularSystem(f"rank {rank} < {degree + 1}")
    residuals = y - vander @ coeffs
    ss_res = float(residuals @ residuals)
    syy = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / syy if syy > 0.0 else 0.0
    return Regression(
        degree=degree,
        coefficients=tuple(float(c) for c in coeffs),
        rmse=math.sqrt(ss_res / n),
        r2=r2,
    )


def minmax_scale(points: Sequence[Point]) -> list[Point]:
    """Per-dimension min-max scaling to the unit square.

    A constant dimension maps to 0.0. The clustering tasks scale their
    inputs with this before calling kmeans/dbscan, so reported errors and
    eps thresholds are comparable across field pairs.
    """
    arr = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    lo = arr.min(axis=0)
    span = arr.max(axis=0) - lo
    span[span == 0.0] = math.inf  # constant dimension -> 0.0 everywhere
    scaled = (arr - lo) / span
    return [(float(px), float(py)) for px, py in scaled]


def _as_points(points: Sequence[Point]) -> np.ndarray:
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("points must be 2-D")
    return arr


def _kmeans_pp_init(arr: np.ndarray, k: int, seed: int) -> np.ndarray:
    """k-means++ seeding: first center uniform, then proportional to D^2."""
    rng = np.random.default_rng(seed)
    n = len(arr)
    centers = np.empty((k, 2), dtype=np.float64)
    centers[0] = arr[rng.integers(n)]
    d2 = ((arr - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0.0:
            idx = rng.choice(n, p=d2 / total)
        else:
            idx = rng.integers(n)
        centers[j] = arr[idx]
        d2 = np.minimum(d2, ((arr - centers[j]) ** 2).sum(axis=1))
    return centers


def kmeans(points: Sequence[Point], k: int, seed: int) -> KMeans:
    """Lloyd's algorithm with k-means++ seeding from the given seed.

    Deterministic for a fixed (points, k, seed); stops when assignments
    stabilize or after 100 iterations. avg_error is the mean Euclidean
    distance from each point to its centroid, in input units.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    arr = _as_points(points)
    if len(arr) < k:
        raise TooFewValues(f"need at least {k} points, got {len(arr)}")
    init = _kmeans_pp_init(arr, k, seed)
    labels, centers, history = backend.lloyd(arr, init, MAX_LLOYD_ITERATIONS)
    diffs = arr - centers[labels]
    dists = np.sqrt((diffs**2).sum(axis=1))
    mean_point = arr.mean(axis=0)
    total_sse = float(((arr - mean_point) ** 2).sum())
    return KMeans(
        k=k,
        centroids=tuple((float(cx), float(cy)) for cx, cy in centers),
        assignment=tuple(int(l) for l in labels),
        avg_error=float(dists.mean()),
        sse=float((dists**2).sum()),
        total_sse=total_sse,
        sse_history=tuple(history),
    )


def dbscan(points: Sequence[Point], eps: float, min_pts: int) -> Dbscan:
    """Classic density-based clustering; see the backend kernels for rules."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    arr = _as_points(points)
    if len(arr) < min_pts:
        raise TooFewValues(f"need at least {min_pts} points, got {len(arr)}")
    labels, cluster_count = backend.dbscan_labels(arr, float(eps), int(min_pts))
    return Dbscan(
        eps=eps,
        min_pts=min_pts,
        cluster_count=int(cluster_count),
        assignment=tuple(int(l) for l in labels),
    )
