"""Task enumeration and execution: every applicable analysis for a schema,
ordered main-effects-first, run on a bounded worker pool with failure
isolation."""

from __future__ import annotations

import hashlib
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass
from typing import Callable, Sequence

from .analytics import ops
from .charts import ChartSpec, chart_for
from .errors import SingularSystem, TooFewValues, ZeroVariance
from .insight import Insight, ModuleKind, render_description, render_title, score_insight
from .tabular import Dataset, Field, FieldKind, category_labels, category_pair, numeric_column, pair_columns

log = logging.getLogger(__name__)

KMEANS_KS = (3, 5, 7)
#: (min_pts, eps) pairs in min-max-scaled units: one tight, one loose regime
DBSCAN_CONFIGS = ((4, 0.05), (8, 0.1))
POLY_DEGREES = (2, 3)

#: freq tasks are pointless above this many distinct labels
HIGH_CARDINALITY_CAP = 100

#: module errors that mean "no finding here", not "something broke"
SKIP_ERRORS = (TooFewValues, ZeroVariance, SingularSystem)

ALL_KINDS = (
    ModuleKind.MEAN_VARIANCE,
    ModuleKind.FREQ_COUNTS,
    ModuleKind.FREQ_COMB,
    ModuleKind.CORRELATION,
    ModuleKind.KMEANS,
    ModuleKind.DBSCAN,
    ModuleKind.LINREG,
    ModuleKind.POLYREG,
)

PENDING = "pending"
RUNNING = "running"
DONE = "done"
FAILED = "failed"
SKIPPED = "skipped"


@dataclass
class ComputeTask:
    id: str
    module_kind: ModuleKind
    field_names: tuple[str, ...]
    params: dict
    cost_estimate: float = 0.0
    relevance_estimate: float = 0.0
    state: str = PENDING


@dataclass(frozen=True)
class EngineConfig:
    worker_count: int = 4
    per_task_timeout: float = 30.0
    seed: int = 0

    @classmethod
    def from_env(cls, **overrides) -> "EngineConfig":
        values = {
            "worker_count": int(os.environ.get("WORKERS", 4)),
            "per_task_timeout": float(os.environ.get("TASK_TIMEOUT_SECS", 30.0)),
            "seed": int(os.environ.get("SEED", 0)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class RunSummary:
    done: int = 0
    failed: int = 0
    skipped: int = 0

    @property
    def total(self) -> int:
        return self.done + self.failed + self.skipped

    def to_dict(self) -> dict:
        return {"done": self.done, "failed": self.failed, "skipped": self.skipped}


def stable_seed(*parts) -> int:
    """Process-independent 63-bit seed from the given parts."""
    digest = hashlib.blake2b("|".join(str(p) for p in parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def _freq_eligible(f: Field, row_count: int) -> bool:
    if f.kind == FieldKind.TEMPORAL:
        return True
    return f.distinct_count <= min(HIGH_CARDINALITY_CAP, row_count / 2)


def enumerate_tasks(
    schema: Sequence[Field],
    row_count: int,
    registry: Sequence[ModuleKind] = ALL_KINDS,
) -> list[ComputeTask]:
    """Every applicable (module, field set, params) combination, exactly once.

    Per numerical field one merged descriptive task; per categorical or
    temporal field one frequency count (high-cardinality categorical fields
    are skipped); per categorical pair one combination count; per numerical
    pair: correlation, k-means for k in {3,5,7}, two DBSCAN regimes, linear
    and degree-2/3 polynomial regression.
    """
    enabled = set(registry)
    numerical = [f for f in schema if f.kind == FieldKind.NUMERICAL]
    frequency = [f for f in schema if f.kind in (FieldKind.CATEGORICAL, FieldKind.TEMPORAL) and _freq_eligible(f, row_count)]
    categorical = [f for f in frequency if f.kind == FieldKind.CATEGORICAL]

    tasks: list[ComputeTask] = []

    def add(kind: ModuleKind, fields: tuple[str, ...], params: dict, suffix: str = "") -> None:
        if kind in enabled:
            tasks.append(
                ComputeTask(
                    id=f"{kind.value}:{'+'.join(fields)}{suffix}",
                    module_kind=kind,
                    field_names=fields,
                    params=params,
                )
            )

    for f in numerical:
        add(ModuleKind.MEAN_VARIANCE, (f.name,), {})
    for f in frequency:
        add(ModuleKind.FREQ_COUNTS, (f.name,), {})
    for i, a in enumerate(categorical):
        for b in categorical[i + 1 :]:
            add(ModuleKind.FREQ_COMB, (a.name, b.name), {})
    for i, a in enumerate(numerical):
        for b in numerical[i + 1 :]:
            pair = (a.name, b.name)
            add(ModuleKind.CORRELATION, pair, {})
            for k in KMEANS_KS:
                add(ModuleKind.KMEANS, pair, {"k": k}, suffix=f":k{k}")
            for min_pts, eps in DBSCAN_CONFIGS:
                add(ModuleKind.DBSCAN, pair, {"min_pts": min_pts, "eps": eps}, suffix=f":p{min_pts}")
            add(ModuleKind.LINREG, pair, {})
            for degree in POLY_DEGREES:
                add(ModuleKind.POLYREG, pair, {"degree": degree}, suffix=f":d{degree}")
    return tasks


def estimate(task: ComputeTask, meta: dict) -> tuple[float, float]:
    """(cost, relevance) from dataset metadata; also stored on the task.

    Relevance tiers: 3 = single-field main effects, 2 = pairwise counts and
    correlation, 1 = clustering and regression. Cost is the dominant term
    of each module's work as a function of row count.
    """
    rows = float(meta["rows"])
    kind = task.module_kind
    if kind in (ModuleKind.MEAN_VARIANCE, ModuleKind.FREQ_COUNTS):
        cost, relevance = rows, 3.0
    elif kind in (ModuleKind.FREQ_COMB, ModuleKind.CORRELATION):
        cost, relevance = rows, 2.0
    elif kind == ModuleKind.KMEANS:
        cost, relevance = rows * task.params["k"] * 100.0, 1.0
    elif kind == ModuleKind.DBSCAN:
        cost, relevance = rows * rows, 1.0
    elif kind in (ModuleKind.LINREG, ModuleKind.POLYREG):
        cost, relevance = rows, 1.0
    else:
        raise ValueError(f"no estimate rule for {kind}")
    task.cost_estimate = cost
    task.relevance_estimate = relevance
    return cost, relevance


def order(tasks: Sequence[ComputeTask]) -> list[ComputeTask]:
    """Deterministic total order: relevance desc, cost asc, id asc."""
    return sorted(tasks, key=lambda t: (-t.relevance_estimate, t.cost_estimate, t.id))


def execute_task(task: ComputeTask, dataset: Dataset, base_seed: int = 0):
    """Run one task; returns (result, insight, chart).

    Raises one of SKIP_ERRORS when the data cannot support the module
    (too few rows, constant column, ...); any other exception is a genuine
    failure and is isolated by the runner.
    """
    kind = task.module_kind
    fields = task.field_names
    result = None

    if kind == ModuleKind.MEAN_VARIANCE:
        result = ops.descriptive(numeric_column(dataset, fields[0]))
    elif kind == ModuleKind.FREQ_COUNTS:
        result = ops.freq_counts(category_labels(dataset, fields[0]))
    elif kind == ModuleKind.FREQ_COMB:
        a, b = category_pair(dataset, fields[0], fields[1])
        result = ops.freq_comb(a, b)
    elif kind == ModuleKind.CORRELATION:
        result = ops.pearson(pair_columns(dataset, fields[0], fields[1]))
    elif kind == ModuleKind.KMEANS:
        pairs = pair_columns(dataset, fields[0], fields[1])
        k = task.params["k"]
        if len(pairs) < k:
            raise TooFewValues(f"{len(pairs)} pairs for k={k}")
        seed = stable_seed(base_seed, dataset.id, task.id)
        result = ops.kmeans(ops.minmax_scale(pairs), k, seed)
    elif kind == ModuleKind.DBSCAN:
        pairs = pair_columns(dataset, fields[0], fields[1])
        min_pts, eps = task.params["min_pts"], task.params["eps"]
        if len(pairs) < min_pts:
            raise TooFewValues(f"{len(pairs)} pairs for min_pts={min_pts}")
        result = ops.dbscan(ops.minmax_scale(pairs), eps, min_pts)
    elif kind == ModuleKind.LINREG:
        result = ops.linreg(pair_columns(dataset, fields[0], fields[1]))
    elif kind == ModuleKind.POLYREG:
        result = ops.polyreg(pair_columns(dataset, fields[0], fields[1]), task.params["degree"])
    else:
        raise ValueError(f"no executor for {kind}")

    chart = chart_for(
        kind,
        fields,
        result,
        dataset,
        chart_id=f"c-{task.id}",
        seed=stable_seed(base_seed, dataset.id, task.id, "chart"),
    )
    insight = Insight(
        id=f"i-{task.id}",
        module_kind=kind,
        field_names=fields,
        title=render_title(kind, fields, result),
        description=render_description(kind, fields, result),
        score=score_insight(kind, result),
        chart_ref=chart.chart_id,
        created_at=0,  # stamped by the feed on add
        origin="auto",
    )
    return result, insight, chart


Sink = Callable[[Insight, ChartSpec], None]


def run(tasks: Sequence[ComputeTask], dataset: Dataset, config: EngineConfig, sink: Sink) -> RunSummary:
    """Execute tasks in the given order on a bounded pool.

    Each completion immediately emits 0 or 1 insight to the sink (0 when
    the module signals a skip). A failing or overrunning task is marked
    failed and never halts the others.
    """

    def worker(task: ComputeTask) -> None:
        task.state = RUNNING
        started = time.perf_counter()
        try:
            _, insight, chart = execute_task(task, dataset, config.seed)
        except SKIP_ERRORS as exc:
            log.debug("task %s skipped: %s", task.id, exc)
            task.state = SKIPPED
            return
        except Exception:
            log.exception("task %s failed", task.id)
            task.state = FAILED
            return
        if time.perf_counter() - started > config.per_task_timeout:
            log.warning("task %s exceeded the %.1fs timeout", task.id, config.per_task_timeout)
            task.state = FAILED
            return
        sink(insight, chart)
        task.state = DONE

    pool = ThreadPoolExecutor(max_workers=config.worker_count)
    try:
        futures = [(task, pool.submit(worker, task)) for task in tasks]
        for task, future in futures:
            try:
                # workers swallow their own errors; this only guards a wedged task
                future.result(timeout=config.per_task_timeout * 2 + 5)
            except FutureTimeout:
                log.error("task %s abandoned after timeout", task.id)
                task.state = FAILED
    finally:
        pool.shutdown(wait=False)

    summary = RunSummary()
    for task in tasks:
        if task.state == DONE:
            summary.done += 1
        elif task.state == SKIPPED:
            summary.skipped += 1
        else:
            summary.failed += 1
    return summary


def run_dataset(dataset: Dataset, config: EngineConfig, sink: Sink) -> tuple[list[ComputeTask], RunSummary]:
    """Enumerate, estimate, order, and run every task for a dataset."""
    tasks = enumerate_tasks(dataset.fields, dataset.row_count)
    meta = {"rows": dataset.row_count}
    for task in tasks:
        estimate(task, meta)
    ordered = order(tasks)
    summary = run(ordered, dataset, config, sink)
    return ordered, summary
