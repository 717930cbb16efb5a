"""HTTP boundary: dataset upload, live feed stream, queries, charts, pinning.

The engine starts in a background thread as soon as a table is uploaded;
the upload response never waits for computation. Feed events ship as JSON
lines over a persistent connection.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse

from .charts import ChartSpec, chart_from_json
from .errors import DuplicateHeader, EmptyTable, InvalidChart, MalformedInput
from .feed import SORT_ALPHA, SORT_SCORE, SORT_TIME, FeedQuery, FeedStore
from .insight import ModuleKind
from .scheduler import EngineConfig, run_dataset
from .tabular import Dataset, parse_table

MAX_UPLOAD_BYTES = 50 * 1024 * 1024


@dataclass
class Session:
    id: str
    dataset: Dataset
    feed: FeedStore
    charts: dict[str, ChartSpec] = field(default_factory=dict)
    thread: threading.Thread | None = None


def _parse_query(sort: str, kinds: str | None, q: str | None, selected: str | None, group: bool) -> FeedQuery:
    if sort not in (SORT_TIME, SORT_SCORE, SORT_ALPHA):
        raise HTTPException(status_code=400, detail=f"unknown sort {sort!r}")
    kind_filter = None
    if kinds:
        try:
            kind_filter = frozenset(ModuleKind(k.strip()) for k in kinds.split(",") if k.strip())
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
    selected_fields = frozenset(s.strip() for s in selected.split(",") if s.strip()) if selected else None
    return FeedQuery(
        kind_filter=kind_filter,
        text=q,
        sort=sort,
        group_by_kind=group,
        selected_fields=selected_fields or None,
    )


def create_app(config: EngineConfig | None = None) -> FastAPI:
    app = FastAPI(title="insightd")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.config = config or EngineConfig.from_env()
    app.state.session = None

    def current_session(session: str | None = None) -> Session:
        active: Session | None = app.state.session
        if active is None or (session and session != active.id):
            raise HTTPException(status_code=404, detail="unknown session")
        return active

    @app.post("/datasets")
    async def upload_dataset(request: Request, format: str = "csv", name: str = "table"):
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            raise HTTPException(status_code=413, detail="dataset exceeds the 50 MB cap")
        try:
            dataset = parse_table(body, format, name=name)
        except (MalformedInput, EmptyTable, DuplicateHeader) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        session = Session(id=uuid.uuid4().hex[:12], dataset=dataset, feed=FeedStore())

        def sink(insight, chart) -> None:
            session.charts[chart.chart_id] = chart
            session.feed.add(insight)

        def engine() -> None:
            _, summary = run_dataset(dataset, app.state.config, sink)
            session.feed.complete_run(summary.to_dict())

        session.thread = threading.Thread(target=engine, name=f"engine-{session.id}", daemon=True)
        app.state.session = session
        session.thread.start()
        return {"session": session.id, "dataset": dataset.summary()}

    @app.get("/feed")
    def get_feed(
        sort: str = SORT_TIME,
        kinds: str | None = None,
        q: str | None = None,
        selected: str | None = None,
        group: bool = False,
        session: str | None = None,
    ):
        active = current_session(session)
        query = _parse_query(sort, kinds, q, selected, group)
        return [item.to_json_dict() for item in active.feed.query(query)]

    @app.get("/feed/stream")
    def stream_feed(session: str | None = None):
        active = current_session(session)

        def events():
            backlog, summary, live = active.feed.subscribe()
            try:
                for item in backlog:
                    yield json.dumps({"type": "insight", "insight": item.to_json_dict()}, ensure_ascii=False) + "\n"
                if summary is None:
                    while True:
                        event, payload = live.get()
                        if event == "insight":
                            yield json.dumps({"type": "insight", "insight": payload.to_json_dict()}, ensure_ascii=False) + "\n"
                        else:
                            summary = payload
                            break
                yield json.dumps({"type": "run_complete", "summary": summary}) + "\n"
            finally:
                active.feed.unsubscribe(live)

        return StreamingResponse(events(), media_type="application/x-ndjson")

    @app.get("/charts/{chart_id}")
    def get_chart(chart_id: str, session: str | None = None):
        active = current_session(session)
        chart = active.charts.get(chart_id)
        if chart is None:
            raise HTTPException(status_code=404, detail="unknown chart")
        return chart.to_json_dict()

    @app.post("/feed/pin")
    async def pin_chart(request: Request, session: str | None = None):
        active = current_session(session)
        try:
            payload = await request.json()
        except json.JSONDecodeError as exc:
            raise HTTPException(status_code=400, detail="invalid JSON body") from exc
        if not isinstance(payload, dict) or "chart" not in payload or "title" not in payload:
            raise HTTPException(status_code=400, detail="body must be {chart, title}")
        try:
            spec = chart_from_json(payload["chart"])
            spec = replace(spec, chart_id=f"pc-{uuid.uuid4().hex[:8]}")
            insight = active.feed.pin(spec, str(payload["title"]))
        except InvalidChart as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        active.charts[spec.chart_id] = spec
        return insight.to_json_dict()

    return app
