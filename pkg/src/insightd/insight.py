"""Feed items: natural-language rendering and interestingness scoring."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .analytics.results import (
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
from .errors import KindMismatch

MAX_TITLE_LEN = 80

#: score assigned to merged descriptive items; deliberately low so simple
#: statistics never outrank a substantive finding
DESCRIPTIVE_SCORE = 0.1


class ModuleKind(str, Enum):
    MEAN_VARIANCE = "mean_variance"
    RANGE = "range"
    FREQ_COUNTS = "freq_counts"
    FREQ_COMB = "freq_comb"
    CORRELATION = "correlation"
    KMEANS = "kmeans"
    DBSCAN = "dbscan"
    LINREG = "linreg"
    POLYREG = "polyreg"
    USER_PINNED = "user_pinned"


@dataclass(frozen=True)
class Insight:
    id: str
    module_kind: ModuleKind
    field_names: tuple[str, ...]
    title: str
    description: str
    score: float
    chart_ref: str
    created_at: int
    origin: str  # "auto" | "user"

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.module_kind.value,
            "fields": list(self.field_names),
            "title": self.title,
            "description": self.description,
            "score": self.score,
            "chart_id": self.chart_ref,
            "created_at": self.created_at,
            "origin": self.origin,
        }


def fmt_value(x: float) -> str:
    """Compact numeric rendering: two decimals, whole numbers for large values.

    0.5 -> "0.5", -0.764 -> "-0.76", 2979.41 -> "2979", 1613.0 -> "1613".
    """
    if abs(x) >= 100:
        return str(int(round(x)))
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def humanize(name: str) -> str:
    """Field name as prose: underscores become spaces."""
    return name.replace("_", " ")


def _expect(result, expected_type, kind: ModuleKind):
    if not isinstance(result, expected_type):
        raise KindMismatch(f"{kind.value} got {type(result).__name__}")
    return result


def render_title(kind: ModuleKind, field_names: Sequence[str], result) -> str:
    """Compact one-line label; raw field names, <= 80 characters."""
    a = field_names[0] if field_names else ""
    b = field_names[1] if len(field_names) > 1 else ""
    if kind == ModuleKind.CORRELATION:
        r = _expect(result, Correlation, kind)
        title = f"ρ = {fmt_value(r.rho)} for {a} and {b}"
    elif kind == ModuleKind.RANGE:
        r = _expect(result, Range, kind)
        title = f"{a}: {fmt_value(r.min)}–{fmt_value(r.max)}"
    elif kind == ModuleKind.MEAN_VARIANCE:
        if isinstance(result, Descriptive):
            title = f"{a}: {fmt_value(result.min)}–{fmt_value(result.max)}"
        else:
            r = _expect(result, MeanVariance, kind)
            title = f"{a}: mean {fmt_value(r.mean)} (var {fmt_value(r.variance)})"
    elif kind == ModuleKind.FREQ_COUNTS:
        r = _expect(result, FreqCounts, kind)
        title = f"{a}: top {r.most}, rare {r.least}"
    elif kind == ModuleKind.FREQ_COMB:
        r = _expect(result, FreqComb, kind)
        title = f"{a} × {b}: top ({r.argmax[0]}, {r.argmax[1]})"
    elif kind == ModuleKind.KMEANS:
        r = _expect(result, KMeans, kind)
        title = f"{r.k} clusters in {a} × {b}"
    elif kind == ModuleKind.DBSCAN:
        r = _expect(result, Dbscan, kind)
        title = f"{r.cluster_count} dense clusters in {a} × {b}"
    elif kind == ModuleKind.LINREG:
        r = _expect(result, Regression, kind)
        title = f"linear fit: {a} vs {b} (rmse {fmt_value(r.rmse)})"
    elif kind == ModuleKind.POLYREG:
        r = _expect(result, Regression, kind)
        title = f"deg-{r.degree} fit: {a} vs {b} (rmse {fmt_value(r.rmse)})"
    else:
        raise KindMismatch(f"no title template for {kind}")
    return title[:MAX_TITLE_LEN]


def render_description(kind: ModuleKind, field_names: Sequence[str], result) -> str:
    """One-sentence finding; humanized field names, values to two decimals."""
    a = humanize(field_names[0]) if field_names else ""
    b = humanize(field_names[1]) if len(field_names) > 1 else ""
    if kind == ModuleKind.CORRELATION:
        r = _expect(result, Correlation, kind)
        return f"Correlation of {fmt_value(r.rho)} was found between attributes {a} and {b}."
    if kind == ModuleKind.RANGE:
        r = _expect(result, Range, kind)
        return f"Range ({fmt_value(r.min)}, {fmt_value(r.max)}) was found in attribute {a}."
    if kind == ModuleKind.MEAN_VARIANCE:
        if isinstance(result, Descriptive):
            return (
                f"{a} averages {fmt_value(result.mean)} "
                f"(range {fmt_value(result.min)}–{fmt_value(result.max)})."
            )
        r = _expect(result, MeanVariance, kind)
        return f"Attribute {a} has mean of {fmt_value(r.mean)} with variance of {fmt_value(r.variance)}."
    if kind == ModuleKind.FREQ_COUNTS:
        r = _expect(result, FreqCounts, kind)
        return f"{r.most} was the most frequent sub-category in {a}, and {r.least} was the least frequent."
    if kind == ModuleKind.FREQ_COMB:
        r = _expect(result, FreqComb, kind)
        return (
            f"Most frequent combination was found between {r.argmax[0]} in attribute {a}, "
            f"and {r.argmax[1]} in attribute {b}."
        )
    if kind == ModuleKind.KMEANS:
        r = _expect(result, KMeans, kind)
        return f"K-means with {r.k} clusters between {a} and {b} has average error {fmt_value(r.avg_error)}."
    if kind == ModuleKind.DBSCAN:
        r = _expect(result, Dbscan, kind)
        return f"DBSCAN between {a} and {b} with minPts = {r.min_pts} estimated {r.cluster_count} clusters."
    if kind == ModuleKind.LINREG:
        r = _expect(result, Regression, kind)
        return f"Linear regression between {a} and {b} has estimate error of {fmt_value(r.rmse)}."
    if kind == ModuleKind.POLYREG:
        r = _expect(result, Regression, kind)
        return f"Polynomial regression between {a} and {b} has estimate error of {fmt_value(r.rmse)}."
    raise KindMismatch(f"no description template for {kind}")


def score_insight(kind: ModuleKind, result, context: dict | None = None) -> float:
    """Normalized interestingness in [0, 1], comparable across modules."""
    if kind == ModuleKind.CORRELATION:
        r = _expect(result, Correlation, kind)
        return min(abs(r.rho), 1.0)
    if kind in (ModuleKind.MEAN_VARIANCE, ModuleKind.RANGE):
        _expect(result, (Descriptive, MeanVariance, Range), kind)
        return DESCRIPTIVE_SCORE
    if kind == ModuleKind.FREQ_COUNTS:
        r = _expect(result, FreqCounts, kind)
        total = sum(r.counts.values())
        spread = max(r.counts.values()) - min(r.counts.values())
        return spread / total if total else 0.0
    if kind == ModuleKind.FREQ_COMB:
        r = _expect(result, FreqComb, kind)
        total = sum(r.matrix.values())
        return max(r.matrix.values()) / total if total else 0.0
    if kind == ModuleKind.KMEANS:
        r = _expect(result, KMeans, kind)
        if r.total_sse <= 0.0:
            return 0.0
        return min(max(1.0 - r.sse / r.total_sse, 0.0), 1.0)
    if kind == ModuleKind.DBSCAN:
        r = _expect(result, Dbscan, kind)
        if r.cluster_count < 1:
            return 0.0
        return 1.0 - r.noise_count / len(r.assignment)
    if kind in (ModuleKind.LINREG, ModuleKind.POLYREG):
        r = _expect(result, Regression, kind)
        return min(max(r.r2, 0.0), 1.0)
    if kind == ModuleKind.USER_PINNED:
        return 0.0
    raise KindMismatch(f"no score rule for {kind}")
