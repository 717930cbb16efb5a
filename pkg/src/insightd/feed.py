"""Queryable insight feed: filter, search, sort, group, reorder, pin."""

from __future__ import annotations

import itertools
import queue
import threading
from dataclasses import dataclass, replace
from typing import Iterable

from .charts import ChartSpec, validate
from .errors import DuplicateId, InvalidChart
from .insight import Insight, ModuleKind

SORT_TIME = "time"
SORT_SCORE = "score"
SORT_ALPHA = "alpha"


@dataclass(frozen=True)
class FeedQuery:
    kind_filter: frozenset[ModuleKind] | None = None
    text: str | None = None
    sort: str = SORT_TIME
    group_by_kind: bool = False
    selected_fields: frozenset[str] | None = None


def _matches_text(insight: Insight, needle: str) -> bool:
    haystack = " ".join((insight.title, insight.description, *insight.field_names)).lower()
    return needle.lower() in haystack


def _sorted(items: list[Insight], sort: str) -> list[Insight]:
    if sort == SORT_TIME:
        return sorted(items, key=lambda i: -i.created_at)
    if sort == SORT_SCORE:
        return sorted(items, key=lambda i: (-i.score, -i.created_at))
    if sort == SORT_ALPHA:
        return sorted(items, key=lambda i: (i.title.casefold(), -i.created_at))
    raise ValueError(f"unknown sort {sort!r}")


def _group_stable(items: list[Insight]) -> list[Insight]:
    by_kind: dict[ModuleKind, list[Insight]] = {}
    for item in items:
        by_kind.setdefault(item.module_kind, []).append(item)
    return list(itertools.chain.from_iterable(by_kind.values()))


def _reorder_by_selection(items: list[Insight], selected: frozenset[str]) -> list[Insight]:
    """Move kind categories touching a selected field to the top.

    Category-granularity stable partition: inside a touching category the
    matching items come first; when nothing matches, the order is unchanged.
    """
    def touches(item: Insight) -> bool:
        return any(name in selected for name in item.field_names)

    if not selected or not any(touches(i) for i in items):
        return items
    by_kind: dict[ModuleKind, list[Insight]] = {}
    for item in items:
        by_kind.setdefault(item.module_kind, []).append(item)
    touched, untouched = [], []
    for kind, members in by_kind.items():
        if any(touches(i) for i in members):
            touched.append([i for i in members if touches(i)] + [i for i in members if not touches(i)])
        else:
            untouched.append(members)
    return list(itertools.chain.from_iterable(touched + untouched))


class FeedStore:
    """Thread-safe accumulating feed; multiple producers, snapshot readers.

    Subscribers receive ("insight", item) events for every add and one
    ("complete", summary) event when the run finishes; subscribing returns
    the current backlog atomically so replay + live events have no gaps.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._items: list[Insight] = []
        self._ids: set[str] = set()
        self._clock = 0
        self._pin_counter = 0
        self._subscribers: list[queue.SimpleQueue] = []
        self._summary: dict | None = None

    def add(self, insight: Insight) -> Insight:
        """Stamp the insight with a monotonic logical timestamp and store it."""
        with self._lock:
            if insight.id in self._ids:
                raise DuplicateId(insight.id)
            self._clock += 1
            stamped = replace(insight, created_at=self._clock)
            self._items.append(stamped)
            self._ids.add(stamped.id)
            subscribers = list(self._subscribers)
        for sub in subscribers:
            sub.put(("insight", stamped))
        return stamped

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)

    def snapshot(self) -> list[Insight]:
        with self._lock:
            return list(self._items)

    def query(self, q: FeedQuery) -> list[Insight]:
        """Filter -> search -> sort -> optional grouping; deterministic."""
        items = self.snapshot()
        if q.kind_filter is not None:
            items = [i for i in items if i.module_kind in q.kind_filter]
        if q.text:
            items = [i for i in items if _matches_text(i, q.text)]
        items = _sorted(items, q.sort)
        if q.selected_fields:
            return _reorder_by_selection(items, q.selected_fields)
        if q.group_by_kind:
            return _group_stable(items)
        return items

    def reorder_for_selection(self, selected_fields: Iterable[str], base: FeedQuery | None = None) -> list[Insight]:
        q = base or FeedQuery()
        return self.query(replace(q, selected_fields=frozenset(selected_fields)))

    def pin(self, chart: ChartSpec, title: str) -> Insight:
        """Add a user-pinned insight for a manually specified chart."""
        violations = validate(chart)
        if violations:
            raise InvalidChart("; ".join(violations))
        fields = tuple(
            enc.field
            for enc in (chart.x, chart.y, chart.color)
            if enc is not None and enc.field
        )
        with self._lock:
            self._pin_counter += 1
            pin_id = f"pin-{self._pin_counter}"
        insight = Insight(
            id=pin_id,
            module_kind=ModuleKind.USER_PINNED,
            field_names=fields,
            title=title,
            description=f"Pinned from the chart view: {title}",
            score=0.0,
            chart_ref=chart.chart_id,
            created_at=0,
            origin="user",
        )
        return self.add(insight)

    # --- streaming ---

    def subscribe(self) -> tuple[list[Insight], dict | None, queue.SimpleQueue]:
        """Atomically returns (backlog, summary-if-finished, live queue)."""
        with self._lock:
            sub: queue.SimpleQueue = queue.SimpleQueue()
            backlog = list(self._items)
            summary = self._summary
            if summary is None:
                self._subscribers.append(sub)
            return backlog, summary, sub

    def unsubscribe(self, sub: queue.SimpleQueue) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)

    def complete_run(self, summary: dict) -> None:
        """Record the run summary and notify all live subscribers."""
        with self._lock:
            self._summary = summary
            subscribers = list(self._subscribers)
            self._subscribers.clear()
        for sub in subscribers:
            sub.put(("complete", summary))

    @property
    def run_summary(self) -> dict | None:
        with self._lock:
            return self._summary
