"""Table ingestion: CSV/JSON parsing, per-column type inference, column extraction."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import re
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum

from .errors import DuplicateHeader, EmptyTable, KindMismatch, MalformedInput

#: Cell texts treated as missing (case-insensitive, after stripping).
MISSING_TOKENS = frozenset({"", "na", "null"})

#: Fraction of non-missing cells that must parse for a kind to win.
PARSE_RATIO = 0.95

_YEAR_RE = re.compile(r"^\d{4}$")


class FieldKind(str, Enum):
    CATEGORICAL = "categorical"
    NUMERICAL = "numerical"
    TEMPORAL = "temporal"


@dataclass(frozen=True)
class Field:
    name: str
    kind: FieldKind
    distinct_count: int
    missing_count: int


@dataclass(frozen=True)
class Dataset:
    """Immutable parsed table; column-major cells keyed by field name.

    Cells are ``float`` (numerical), ``str`` (categorical), ``datetime.date``
    (temporal), or ``None`` (missing). Safe to share across threads.
    """

    id: str
    name: str
    row_count: int
    fields: tuple[Field, ...]
    columns: dict[str, list]

    def field(self, name: str) -> Field:
        for f in self.fields:
            if f.name == name:
                return f
        raise KeyError(name)

    def fields_of_kind(self, kind: FieldKind) -> list[Field]:
        return [f for f in self.fields if f.kind == kind]

    def summary(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "rows": self.row_count,
            "fields": [
                {
                    "name": f.name,
                    "kind": f.kind.value,
                    "distinct": f.distinct_count,
                    "missing": f.missing_count,
                }
                for f in self.fields
            ],
        }


def _parse_number(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    # nan/inf tokens are data noise, not numbers we can aggregate
    if math.isnan(value) or math.isinf(value):
        return None
    return value


def _parse_timestamp(text: str) -> date | None:
    if _YEAR_RE.match(text):
        year = int(text)
        return date(year, 1, 1) if 1000 <= year <= 3000 else None
    try:
        return date.fromisoformat(text)
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(text).date()
    except ValueError:
        return None


def infer_field_kind(raw: list[str]) -> tuple[FieldKind, list]:
    """Classify a column of raw text cells and parse it.

    Numerical when >= 95% of the non-missing cells parse as finite numbers,
    temporal when >= 95% parse as ISO dates or 4-digit years in [1000, 3000],
    otherwise categorical. Integer columns with very few distinct values
    (codes such as cylinder counts) are kept categorical: distinct <= 10 and
    at least ten rows per distinct value on average.

    Returns the kind plus the per-cell parsed values, aligned with ``raw``;
    missing cells (and cells that fail the winning kind's parse) map to None.
    """
    if not raw:
        raise ValueError("raw column must be non-empty")
    stripped = [cell.strip() if isinstance(cell, str) else cell for cell in raw]
    is_missing = [not isinstance(c, str) or c.lower() in MISSING_TOKENS for c in stripped]
    present = [c for c, miss in zip(stripped, is_missing) if not miss]

    if not present:
        return FieldKind.CATEGORICAL, [None] * len(raw)

    numbers = [_parse_number(c) for c in present]
    parsed_numbers = [v for v in numbers if v is not None]
    if len(parsed_numbers) / len(present) >= PARSE_RATIO:
        distinct = set(parsed_numbers)
        all_integral = all(v.is_integer() for v in parsed_numbers)
        if all_integral and len(distinct) <= 10 and len(distinct) * 10 <= len(parsed_numbers):
            # low-cardinality integer code, e.g. cylinder count or rating
            values = []
            for cell, miss in zip(stripped, is_missing):
                if miss:
                    values.append(None)
                else:
                    num = _parse_number(cell)
                    values.append(str(int(num)) if num is not None else cell)
            return FieldKind.CATEGORICAL, values
        values = [None if miss else _parse_number(cell) for cell, miss in zip(stripped, is_missing)]
        return FieldKind.NUMERICAL, values

    stamps = [_parse_timestamp(c) for c in present]
    if sum(s is not None for s in stamps) / len(present) >= PARSE_RATIO:
        values = [None if miss else _parse_timestamp(cell) for cell, miss in zip(stripped, is_missing)]
        return FieldKind.TEMPORAL, values

    values = [None if miss else cell for cell, miss in zip(stripped, is_missing)]
    return FieldKind.CATEGORICAL, values


def _cells_to_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    return value if isinstance(value, str) else str(value)


def _rows_from_csv(text: str) -> tuple[list[str], list[list[str]]]:
    try:
        reader = csv.reader(io.StringIO(text))
        rows = list(reader)
    except csv.Error as exc:
        raise MalformedInput(f"invalid CSV: {exc}") from exc
    rows = [r for r in rows if r]  # drop fully blank lines
    if not rows:
        raise MalformedInput("no header row")
    header, data = rows[0], rows[1:]
    padded = []
    for i, row in enumerate(data):
        if len(row) > len(header):
            raise MalformedInput(f"row {i + 2} has more cells than the header")
        padded.append(row + [""] * (len(header) - len(row)))
    return header, padded


def _rows_from_json(text: str) -> tuple[list[str], list[list[str]]]:
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    if not isinstance(records, list) or any(not isinstance(r, dict) for r in records):
        raise MalformedInput("expected a JSON array of flat objects")
    header: list[str] = []
    for record in records:
        for key in record:
            if not isinstance(record[key], (str, int, float, bool, type(None))):
                raise MalformedInput(f"field {key!r} holds a nested value")
            if key not in header:
                header.append(key)
    data = [[_cells_to_text(record.get(key)) for key in header] for record in records]
    return header, data


def parse_table(data: bytes, format: str, name: str = "table") -> Dataset:
    """Parse CSV (RFC 4180, header required) or JSON (array of flat objects).

    Raises MalformedInput, EmptyTable, or DuplicateHeader.
    """
    if not data:
        raise MalformedInput("empty input")
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput("input is not valid UTF-8") from exc

    header, rows = (_rows_from_csv if format == "csv" else _rows_from_json)(text)
    names = [h.strip() for h in header]
    seen = set()
    for column_name in names:
        if column_name in seen:
            raise DuplicateHeader(f"duplicate column {column_name!r}")
        seen.add(column_name)
    if not rows:
        raise EmptyTable("table has a header but no data rows")

    fields = []
    columns: dict[str, list] = {}
    for col, column_name in enumerate(names):
        kind, values = infer_field_kind([row[col] for row in rows])
        non_missing = [v for v in values if v is not None]
        fields.append(
            Field(
                name=column_name,
                kind=kind,
                distinct_count=len(set(non_missing)),
                missing_count=len(values) - len(non_missing),
            )
        )
        columns[column_name] = values

    return Dataset(
        id=hashlib.sha1(data).hexdigest()[:12],
        name=name,
        row_count=len(rows),
        fields=tuple(fields),
        columns=columns,
    )


def _resolve(dataset: Dataset, field: Field | str) -> Field:
    return dataset.field(field) if isinstance(field, str) else field


def numeric_column(dataset: Dataset, field: Field | str) -> list[float]:
    """Non-missing values of a numerical field, in row order."""
    f = _resolve(dataset, field)
    if f.kind != FieldKind.NUMERICAL:
        raise KindMismatch(f"{f.name} is {f.kind.value}, not numerical")
    return [v for v in dataset.columns[f.name] if v is not None]


def pair_columns(dataset: Dataset, f1: Field | str, f2: Field | str) -> list[tuple[float, float]]:
    """Row-aligned (x, y) pairs of two numerical fields, pairwise deletion."""
    a, b = _resolve(dataset, f1), _resolve(dataset, f2)
    for f in (a, b):
        if f.kind != FieldKind.NUMERICAL:
            raise KindMismatch(f"{f.name} is {f.kind.value}, not numerical")
    xs, ys = dataset.columns[a.name], dataset.columns[b.name]
    return [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]


def category_labels(dataset: Dataset, field: Field | str) -> list[str]:
    """Non-missing labels of a categorical or temporal field, in row order.

    Temporal cells are bucketed by year, so downstream frequency counting
    sees plain labels either way.
    """
    f = _resolve(dataset, field)
    if f.kind == FieldKind.CATEGORICAL:
        return [v for v in dataset.columns[f.name] if v is not None]
    if f.kind == FieldKind.TEMPORAL:
        return [str(v.year) for v in dataset.columns[f.name] if v is not None]
    raise KindMismatch(f"{f.name} is {f.kind.value}, not categorical or temporal")


def category_pair(dataset: Dataset, f1: Field | str, f2: Field | str) -> tuple[list[str], list[str]]:
    """Row-aligned label pairs for two categorical fields, pairwise deletion."""
    a, b = _resolve(dataset, f1), _resolve(dataset, f2)
    for f in (a, b):
        if f.kind != FieldKind.CATEGORICAL:
            raise KindMismatch(f"{f.name} is {f.kind.value}, not categorical")
    xs, ys = dataset.columns[a.name], dataset.columns[b.name]
    kept = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    return [x for x, _ in kept], [y for _, y in kept]
