"""Command line entry points: offline report runs and the HTTP server."""

from __future__ import annotations

import json
import pathlib
import sys

import click

from .errors import InsightdError
from .feed import SORT_ALPHA, SORT_SCORE, SORT_TIME, FeedQuery, FeedStore
from .scheduler import EngineConfig, run_dataset
from .tabular import parse_table


@click.group()
def main() -> None:
    """Proactive insight engine for tabular data."""


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _markdown_report(name: str, items) -> str:
    lines = [f"# Insights for {name}", ""]
    for item in items:
        lines.append(f"## {item.title}")
        lines.append("")
        lines.append(item.description)
        lines.append("")
        lines.append(f"*{item.module_kind.value}, score {item.score:.3f}*")
        lines.append("")
    return "\n".join(lines)


@main.command()
@click.argument("path", type=click.Path(path_type=pathlib.Path))
@click.option("--format", "out_format", type=click.Choice(["json", "md"]), default="json", help="report format")
@click.option("--out", type=click.Path(path_type=pathlib.Path), default=None, help="write the report here instead of stdout")
@click.option("--sort", type=click.Choice([SORT_TIME, SORT_SCORE, SORT_ALPHA]), default=SORT_TIME)
@click.option("--workers", type=int, default=None, help="worker pool size (default: WORKERS env or 4)")
@click.option("--seed", type=int, default=None, help="engine seed (default: SEED env or 0)")
@click.option("--timeout", type=float, default=None, help="per-task timeout in seconds")
def run(path, out_format, out, sort, workers, seed, timeout) -> None:
    """Analyze a CSV/JSON table and write the resulting feed as a report."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        _fail(str(exc))
    table_format = "json" if path.suffix.lower() == ".json" else "csv"
    try:
        dataset = parse_table(data, table_format, name=path.stem)
    except InsightdError as exc:
        _fail(str(exc))

    config = EngineConfig.from_env(worker_count=workers, per_task_timeout=timeout, seed=seed)
    feed = FeedStore()
    tasks, summary = run_dataset(dataset, config, lambda insight, chart: feed.add(insight))
    items = feed.query(FeedQuery(sort=sort))

    if out_format == "json":
        report = json.dumps([i.to_json_dict() for i in items], indent=2, ensure_ascii=False) + "\n"
    else:
        report = _markdown_report(dataset.name, items)

    if out is not None:
        out.write_text(report, encoding="utf-8")
    else:
        click.echo(report, nl=False)
    click.echo(
        f"{len(tasks)} tasks: {summary.done} done, {summary.skipped} skipped, {summary.failed} failed",
        err=True,
    )


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
@click.option("--workers", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--timeout", type=float, default=None)
def serve(host, port, workers, seed, timeout) -> None:
    """Start the HTTP server (upload, feed stream, charts, pinning)."""
    import uvicorn

    from .server import create_app

    config = EngineConfig.from_env(worker_count=workers, per_task_timeout=timeout, seed=seed)
    uvicorn.run(create_app(config), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
