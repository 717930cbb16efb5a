"""Result payloads produced by the computational modules."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class MeanVariance:
    mean: float
    variance: float
    n: int


@dataclass(frozen=True)
class Range:
    min: float
    max: float


@dataclass(frozen=True)
class Descriptive:
    """Merged single-field summary: mean/variance plus range, one feed item."""

    mean: float
    variance: float
    n: int
    min: float
    max: float


@dataclass(frozen=True)
class FreqCounts:
    counts: dict[str, int]
    most: str
    least: str


@dataclass(frozen=True)
class FreqComb:
    matrix: dict[tuple[str, str], int]
    argmax: tuple[str, str]


@dataclass(frozen=True)
class Correlation:
    rho: float
    n: int


@dataclass(frozen=True)
class KMeans:
    k: int
    centroids: tuple[tuple[float, float], ...]
    assignment: tuple[int, ...]
    avg_error: float
    #: sum of squared point-to-centroid distances for this k
    sse: float
    #: same objective with a single global centroid (baseline for scoring)
    total_sse: float
    #: objective after each assignment step; non-increasing
    sse_history: tuple[float, ...] = field(default=())


#: assignment value marking a noise point
NOISE = -1


@dataclass(frozen=True)
class Dbscan:
    eps: float
    min_pts: int
    cluster_count: int
    assignment: tuple[int, ...]

    @property
    def noise_count(self) -> int:
        return sum(1 for a in self.assignment if a == NOISE)


@dataclass(frozen=True)
class Regression:
    degree: int
    coefficients: tuple[float, ...]
    rmse: float
    #: variance explained; 0.0 when the response is constant
    r2: float
