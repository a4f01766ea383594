"""The demo application's HTTP backend: state, utterances, history, events.

This is what the companion UI talks to. It wraps a single GUI session plus
an assistant, fans GUI changes out over a server-sent event stream, and
keeps the user-visible interaction history with replayable deep links.

Run standalone:

    python -m guibridge.demo.backend --port 8000
"""

from __future__ import annotations

import argparse
import asyncio
import json
import queue
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from ..assistant import Assistant, EmbeddedBackend, HttpModelClient, ModelClient, ScriptedModelClient
from ..mcp import McpServer
from ..mcp.http import mcp_router
from ..routegraph import RouteError
from ..session import GuiSession
from ..tools import ConfigurationError
from ..viewmodel import FeedbackPlan, GuiTransition
from . import build_demo_graph

HIGHLIGHT_DURATION_MS = 1500


@dataclass
class UiHistoryItem:
    """One row of the visible interaction history."""

    display: str
    kind: str  # user | assistant_text | gui_action
    replay: str | None = None

    def as_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"display": self.display, "kind": self.kind}
        if self.replay:
            doc["replay"] = self.replay
        return doc


class EventBroker:
    """Fan-out of backend events to any number of stream subscribers."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []
        self.published: int = 0

    def subscribe(self) -> "queue.Queue[dict[str, Any]]":
        q: queue.Queue = queue.Queue()
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def publish(self, event: dict[str, Any]) -> None:
        with self._lock:
            self.published += 1
            for q in self._subscribers:
                q.put(event)


@dataclass
class DemoAppState:
    """Everything the reference app owns besides the GUI session itself.

    Fake data only; seeded so end-to-end runs are reproducible.
    """

    balances: dict[str, float] = field(default_factory=dict)
    contacts: list[str] = field(default_factory=list)
    incidents: list[dict[str, Any]] = field(default_factory=list)
    feedback_queue: list[FeedbackPlan] = field(default_factory=list)

    @classmethod
    def seeded(cls, seed: int = 7) -> "DemoAppState":
        rnd = random.Random(seed)
        contacts = ["Robert", "Mary", "David", "Sarah"]
        balances = {
            "checking": round(rnd.uniform(500, 5000), 2),
            "savings": round(rnd.uniform(1000, 20000), 2),
        }
        incidents = [
            {"incident_id": "2107", "incident_type": "fire", "status": "resolved",
             "location": f"rack {rnd.randint(1, 40)}"},
            {"incident_id": "2108", "incident_type": "water", "status": "open",
             "location": f"row {rnd.randint(1, 9)}"},
        ]
        return cls(balances=balances, contacts=contacts, incidents=incidents)


class DemoBackend:
    """Session + assistant + event fan-out behind an HTTP API."""

    def __init__(self, client: ModelClient | None = None, include_incidents: bool = True):
        self.session = GuiSession(build_demo_graph(include_incidents))
        self.state = DemoAppState.seeded()
        self.broker = EventBroker()
        self.history: list[UiHistoryItem] = []
        self._lock = threading.Lock()
        self.client = client or ScriptedModelClient(self._unconfigured)
        self.assistant = Assistant(
            EmbeddedBackend(self.session),
            self.client,
            system_prompt=(
                "You are a competent translator of user expressions into tool calls "
                "for a banking and datacenter-incident demo application."
            ),
        )
        self.session.subscribe(self._on_transition)
        self.mcp_server = McpServer(self.session, server_name="guibridge-demo")

    @staticmethod
    def _unconfigured(request: dict[str, Any]) -> dict[str, Any]:
        return {
            "text": "No model endpoint is configured; try a direct command like 'go back' "
                    "or replay a deep link."
        }

    # -- session listener -------------------------------------------------------

    def _on_transition(self, transition: GuiTransition, feedback: FeedbackPlan | None, source: str) -> None:
        if feedback is not None:
            self.state.feedback_queue.append(feedback)
        snapshot = self.session.state_snapshot()
        self.broker.publish({"kind": "screen_change", "state": snapshot, "source": source})
        if feedback is not None:
            if feedback.highlight_targets:
                self.broker.publish(
                    {
                        "kind": "highlight",
                        "targets": feedback.highlight_targets,
                        "duration_ms": HIGHLIGHT_DURATION_MS,
                    }
                )
            self.broker.publish({"kind": "speech", "text": feedback.speech_text})
            if transition.kind != "noop" or source == "ui":
                item = UiHistoryItem(feedback.speech_text, "gui_action", replay=feedback.history_entry)
                if item.replay is None:
                    item = UiHistoryItem(feedback.speech_text, "assistant_text")
                self._append_history(item)

    def _append_history(self, item: UiHistoryItem) -> None:
        with self._lock:
            self.history.append(item)
        self.broker.publish({"kind": "history_append", "item": item.as_dict()})

    # -- API operations ------------------------------------------------------------

    def handle_utterance(self, text: str) -> dict[str, Any]:
        self._append_history(UiHistoryItem(text, "user"))
        turn = self.assistant.handle_utterance(text)
        if turn.assistant_text:
            self._append_history(UiHistoryItem(turn.assistant_text, "assistant_text"))
            self.broker.publish({"kind": "speech", "text": turn.assistant_text})
        return {
            "utterance": turn.utterance,
            "fastpath": turn.fastpath,
            "model_calls": turn.model_calls,
            "assistant_text": turn.assistant_text,
            "tool_call": (
                {"name": turn.tool_call.name, "arguments": turn.tool_call.arguments}
                if turn.tool_call
                else None
            ),
            "result_text": turn.result_text,
            "feedback": _feedback_doc(turn.feedback),
            "error": turn.error,
        }

    def replay_deeplink(self, link: str) -> dict[str, Any]:
        turn = self.session.navigate(link, source="ui")
        return {
            "link": link,
            "state": self.session.state_snapshot(),
            "feedback": _feedback_doc(turn.feedback),
        }


def _feedback_doc(feedback: FeedbackPlan | None) -> dict[str, Any] | None:
    if feedback is None:
        return None
    return {
        "speech_text": feedback.speech_text,
        "highlight_targets": feedback.highlight_targets,
        "history_entry": feedback.history_entry,
    }


def _entry_doc(entry: Any) -> dict[str, Any]:
    payload = entry.payload
    if entry.kind == "tool_call":
        payload = {
            "id": payload["id"],
            "name": payload["call"].name,
            "arguments": payload["call"].arguments,
        }
    return {"kind": entry.kind, "payload": payload, "timestamp": entry.timestamp}


def create_app(backend: DemoBackend | None = None, frontend_dist: str | None = None) -> FastAPI:
    backend = backend or DemoBackend()
    app = FastAPI(title="guibridge demo backend")
    app.state.backend = backend

    @app.post("/utterance")
    async def utterance(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            return JSONResponse({"reason": "body must be JSON"}, status_code=400)
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            return JSONResponse({"reason": "missing utterance text"}, status_code=400)
        return JSONResponse(await asyncio.to_thread(backend.handle_utterance, text))

    @app.get("/state")
    async def state() -> JSONResponse:
        return JSONResponse(backend.session.state_snapshot())

    @app.get("/history")
    async def history() -> JSONResponse:
        return JSONResponse(
            {
                "items": [item.as_dict() for item in backend.history],
                "entries": [_entry_doc(e) for e in backend.assistant.history],
            }
        )

    @app.post("/deeplink")
    async def deeplink(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            return JSONResponse({"reason": "body must be JSON"}, status_code=400)
        link = body.get("link")
        if not isinstance(link, str):
            return JSONResponse({"reason": "missing link"}, status_code=400)
        try:
            return JSONResponse(await asyncio.to_thread(backend.replay_deeplink, link))
        except (RouteError, ConfigurationError) as exc:
            return JSONResponse({"reason": str(exc)}, status_code=400)

    @app.get("/events")
    async def events(request: Request, limit: int = 0) -> StreamingResponse:
        q = backend.broker.subscribe()

        async def stream():
            sent = 0
            try:
                while not await request.is_disconnected():
                    try:
                        event = await asyncio.to_thread(q.get, True, 0.1)
                    except queue.Empty:
                        yield ": ping\n\n"
                        continue
                    yield f"data: {json.dumps(event)}\n\n"
                    sent += 1
                    if limit and sent >= limit:
                        return
            finally:
                backend.broker.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    app.include_router(mcp_router(backend.mcp_server))

    if frontend_dist and Path(frontend_dist).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dist, html=True), name="ui")

    return app


def main() -> None:
    import uvicorn

    parser = argparse.ArgumentParser(description="guibridge demo backend")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--endpoint", help="chat-completions endpoint for a real model")
    parser.add_argument("--model", default="local-model")
    parser.add_argument("--frontend", default="frontend/dist", help="static UI directory to serve")
    args = parser.parse_args()

    client = HttpModelClient(args.endpoint, args.model) if args.endpoint else None
    backend = DemoBackend(client=client)
    app = create_app(backend, frontend_dist=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
