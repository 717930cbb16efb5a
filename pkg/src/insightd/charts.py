"""Declarative chart specs with computation overlays and inline data.

Wire schema (field order is fixed; golden tests depend on it):
{chart_id, mark, x: {field, type, bin}, y: {...}, color?, overlays: [...], data: [...]}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analytics.results import (
    NOISE,
    Correlation,
    Dbscan,
    Descriptive,
    FreqComb,
    FreqCounts,
    KMeans,
    Regression,
)
from .analytics.ops import linreg
from .errors import InvalidChart, KindMismatch, UnrenderableCardinality
from .insight import ModuleKind
from .tabular import Dataset, category_pair, numeric_column, pair_columns

MARKS = ("bar", "line", "point", "rect")
CHANNEL_TYPES = ("quantitative", "nominal", "temporal", "count")

MAX_INLINE_ROWS = 10_000
MAX_SCATTER_ROWS = 2_000
MAX_HEATMAP_AXIS = 100
HISTOGRAM_BINS = 10


@dataclass(frozen=True)
class Encoding:
    field: str | None
    channel_type: str
    binned: bool = False

    def to_json_dict(self) -> dict:
        return {"field": self.field, "type": self.channel_type, "bin": self.binned}


@dataclass(frozen=True)
class Overlay:
    """Computation overlay: regression_line, cluster_assignment, or mean_rule."""

    kind: str
    coefficients: tuple[float, ...] | None = None
    labels: tuple[int, ...] | None = None
    value: float | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "regression_line":
            out["coefficients"] = list(self.coefficients or ())
        elif self.kind == "cluster_assignment":
            out["labels"] = list(self.labels or ())
        elif self.kind == "mean_rule":
            out["value"] = self.value
        return out


@dataclass(frozen=True)
class ChartSpec:
    chart_id: str
    mark: str
    x: Encoding
    y: Encoding
    color: Encoding | None = None
    overlays: tuple[Overlay, ...] = ()
    data: tuple[dict, ...] = field(default=())

    def to_json_dict(self) -> dict:
        out: dict = {
            "chart_id": self.chart_id,
            "mark": self.mark,
            "x": self.x.to_json_dict(),
            "y": self.y.to_json_dict(),
        }
        if self.color is not None:
            out["color"] = self.color.to_json_dict()
        out["overlays"] = [o.to_json_dict() for o in self.overlays]
        out["data"] = [dict(row) for row in self.data]
        return out


def chart_from_json(payload: dict) -> ChartSpec:
    """Parse an incoming spec (e.g. a pin request); raises InvalidChart."""
    try:
        def enc(obj) -> Encoding:
            return Encoding(field=obj.get("field"), channel_type=obj["type"], binned=bool(obj.get("bin", False)))

        overlays = []
        for o in payload.get("overlays", []):
            overlays.append(
                Overlay(
                    kind=o["kind"],
                    coefficients=tuple(o["coefficients"]) if "coefficients" in o else None,
                    labels=tuple(o["labels"]) if "labels" in o else None,
                    value=o.get("value"),
                )
            )
        return ChartSpec(
            chart_id=str(payload.get("chart_id", "")),
            mark=payload["mark"],
            x=enc(payload["x"]),
            y=enc(payload["y"]),
            color=enc(payload["color"]) if payload.get("color") else None,
            overlays=tuple(overlays),
            data=tuple(dict(r) for r in payload.get("data", [])),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidChart(f"malformed chart spec: {exc}") from exc


def validate(spec: ChartSpec) -> list[str]:
    """Check every spec invariant; returns violations (empty means ok)."""
    violations: list[str] = []
    if spec.mark not in MARKS:
        violations.append(f"unknown mark {spec.mark!r}")
    if len(spec.data) > MAX_INLINE_ROWS:
        violations.append(f"{len(spec.data)} inline rows exceeds the {MAX_INLINE_ROWS} cap")
    data_keys = set(spec.data[0].keys()) if spec.data else None

    encodings = [("x", spec.x), ("y", spec.y)]
    if spec.color is not None:
        encodings.append(("color", spec.color))
    for channel, enc in encodings:
        if enc.channel_type not in CHANNEL_TYPES:
            violations.append(f"{channel}: unknown channel type {enc.channel_type!r}")
            continue
        if enc.channel_type == "count":
            if enc.field is not None:
                violations.append(f"{channel}: count channel must not name a source field")
            if data_keys is not None and "count" not in data_keys:
                violations.append(f"{channel}: count channel needs a 'count' column in data")
        else:
            if not enc.field:
                violations.append(f"{channel}: missing field")
            elif data_keys is not None and enc.field not in data_keys:
                violations.append(f"{channel}: field {enc.field!r} not present in data")
        if enc.binned and enc.channel_type != "quantitative":
            violations.append(f"{channel}: only quantitative channels can be binned")

    if spec.mark == "rect":
        if spec.x.channel_type != "nominal" or spec.y.channel_type != "nominal":
            violations.append("rect requires nominal x and y encodings")
        if spec.color is None or spec.color.channel_type != "count":
            violations.append("rect requires a count color encoding")

    for overlay in spec.overlays:
        if overlay.kind not in ("regression_line", "cluster_assignment", "mean_rule"):
            violations.append(f"unknown overlay kind {overlay.kind!r}")
        elif overlay.kind == "cluster_assignment" and overlay.labels is not None and len(overlay.labels) != len(spec.data):
            violations.append("cluster_assignment labels must align with data rows")
    return violations


def _histogram_rows(name: str, values: Sequence[float]) -> list[dict]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [{name: lo, "bin_end": hi, "count": len(values)}]
    edges = np.linspace(lo, hi, HISTOGRAM_BINS + 1)
    counts, _ = np.histogram(np.asarray(values, dtype=np.float64), bins=edges)
    return [
        {name: float(edges[i]), "bin_end": float(edges[i + 1]), "count": int(counts[i])}
        for i in range(HISTOGRAM_BINS)
    ]


def _subsample(rows: list[dict], labels: Sequence[int] | None, seed: int) -> tuple[list[dict], list[int] | None]:
    """Seeded uniform subsample preserving row order; labels stay aligned."""
    if len(rows) <= MAX_SCATTER_ROWS:
        return rows, list(labels) if labels is not None else None
    rng = np.random.default_rng(seed)
    keep = np.sort(rng.choice(len(rows), size=MAX_SCATTER_ROWS, replace=False))
    kept_rows = [rows[i] for i in keep]
    kept_labels = [labels[i] for i in keep] if labels is not None else None
    return kept_rows, kept_labels


def chart_for(
    kind: ModuleKind,
    field_names: Sequence[str],
    result,
    dataset: Dataset,
    chart_id: str,
    seed: int = 0,
) -> ChartSpec:
    """Build the chart for one finding; always passes ``validate``."""
    if kind == ModuleKind.MEAN_VARIANCE and isinstance(result, Descriptive):
        name = field_names[0]
        rows = _histogram_rows(name, numeric_column(dataset, name))
        return ChartSpec(
            chart_id=chart_id,
            mark="bar",
            x=Encoding(field=name, channel_type="quantitative", binned=True),
            y=Encoding(field=None, channel_type="count"),
            overlays=(Overlay(kind="mean_rule", value=result.mean),),
            data=tuple(rows),
        )

    if kind == ModuleKind.FREQ_COUNTS:
        if not isinstance(result, FreqCounts):
            raise KindMismatch("freq_counts chart needs a FreqCounts result")
        name = field_names[0]
        ordered = sorted(result.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        rows = [{name: label, "count": count} for label, count in ordered]
        return ChartSpec(
            chart_id=chart_id,
            mark="bar",
            x=Encoding(field=name, channel_type="nominal"),
            y=Encoding(field=None, channel_type="count"),
            data=tuple(rows),
        )

    if kind == ModuleKind.FREQ_COMB:
        if not isinstance(result, FreqComb):
            raise KindMismatch("freq_comb chart needs a FreqComb result")
        a, b = field_names[0], field_names[1]
        cats_a = {cell[0] for cell in result.matrix}
        cats_b = {cell[1] for cell in result.matrix}
        if len(cats_a) > MAX_HEATMAP_AXIS or len(cats_b) > MAX_HEATMAP_AXIS:
            raise UnrenderableCardinality(
                f"heatmap axis would have {max(len(cats_a), len(cats_b))} categories"
            )
        rows = [
            {a: cell[0], b: cell[1], "count": count}
            for cell, count in sorted(result.matrix.items())
        ]
        return ChartSpec(
            chart_id=chart_id,
            mark="rect",
            x=Encoding(field=a, channel_type="nominal"),
            y=Encoding(field=b, channel_type="nominal"),
            color=Encoding(field=None, channel_type="count"),
            data=tuple(rows),
        )

    if kind in (ModuleKind.CORRELATION, ModuleKind.LINREG, ModuleKind.POLYREG):
        a, b = field_names[0], field_names[1]
        pairs = pair_columns(dataset, a, b)
        if kind == ModuleKind.CORRELATION:
            if not isinstance(result, Correlation):
                raise KindMismatch("correlation chart needs a Correlation result")
            coefficients = linreg(pairs).coefficients  # trend line over the full pairs
        else:
            if not isinstance(result, Regression):
                raise KindMismatch("regression chart needs a Regression result")
            coefficients = result.coefficients
        rows = [{a: x, b: y} for x, y in pairs]
        rows, _ = _subsample(rows, None, seed)
        return ChartSpec(
            chart_id=chart_id,
            mark="point",
            x=Encoding(field=a, channel_type="quantitative"),
            y=Encoding(field=b, channel_type="quantitative"),
            overlays=(Overlay(kind="regression_line", coefficients=tuple(coefficients)),),
            data=tuple(rows),
        )

    if kind in (ModuleKind.KMEANS, ModuleKind.DBSCAN):
        if not isinstance(result, (KMeans, Dbscan)):
            raise KindMismatch("cluster chart needs a KMeans or Dbscan result")
        a, b = field_names[0], field_names[1]
        pairs = pair_columns(dataset, a, b)
        labels = list(result.assignment)
        if len(labels) != len(pairs):
            raise KindMismatch("cluster assignment does not align with the field pair")
        rows = [{a: x, b: y} for x, y in pairs]
        rows, labels = _subsample(rows, labels, seed)
        assert labels is not None
        for row, label in zip(rows, labels):
            row["cluster"] = "noise" if label == NOISE else str(label)
        return ChartSpec(
            chart_id=chart_id,
            mark="point",
            x=Encoding(field=a, channel_type="quantitative"),
            y=Encoding(field=b, channel_type="quantitative"),
            color=Encoding(field="cluster", channel_type="nominal"),
            overlays=(Overlay(kind="cluster_assignment", labels=tuple(labels)),),
            data=tuple(rows),
        )

    raise KindMismatch(f"no chart mapping for {kind}")
