"""MCP server bridge: tools, calls, change notifications, GUI event resource.

The server publishes the session's composed tool list, executes calls by
name lookup, swaps the published set wholesale whenever the GUI context
shifts (emitting exactly one tools/list_changed notification per swap), and
exposes recent GUI events as a read-only resource so assistants can pick up
manual interactions without polluting the conversation.
"""

from __future__ import annotations

import json
import threading
import time
from collections import deque
from dataclasses import dataclass
from typing import Any

from .. import __version__
from ..routegraph import DispatchError, RouteError, UnknownRouteError
from ..session import GuiSession
from ..tools import ConfigurationError, ToolCall
from ..viewmodel import BoundTool, FeedbackPlan, GuiTransition

PROTOCOL_VERSION = "2025-03-26"
EVENTS_URI = "gui://last-gui-events"
EVENT_CAPACITY = 50
# ToolResult payloads are whole-screen text; cap them so resource reads and
# results stay cheap. Tail is dropped, head kept.
TOOL_RESULT_MAX_BYTES = 8192
TRUNCATION_MARKER = "\n[truncated]"

METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
NOT_INITIALIZED = -32600
RESOURCE_NOT_FOUND = -32002


@dataclass(frozen=True)
class GuiEvent:
    """One recorded GUI happening, ordered by non-decreasing timestamps."""

    timestamp: float
    kind: str  # navigation | parameter_edit | user_click
    screen_id: str
    detail: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "timestamp": self.timestamp,
            "kind": self.kind,
            "screen_id": self.screen_id,
            "detail": self.detail,
        }


class SessionRegistry:
    """The published tool set plus the bounded GUI event ring.

    Tool sets are replaced wholesale under a lock; readers see either the old
    or the new set, never a mixture. The generation counter increments exactly
    once per successful replacement.
    """

    def __init__(self, event_capacity: int = EVENT_CAPACITY):
        self._lock = threading.Lock()
        self._tools: dict[str, BoundTool] = {}
        self.generation = 0
        self.gui_events: deque[GuiEvent] = deque(maxlen=event_capacity)
        self._last_timestamp = 0.0

    def replace(self, tools: list[BoundTool]) -> None:
        new_set: dict[str, BoundTool] = {}
        for tool in tools:
            if tool.spec.name in new_set:
                raise ConfigurationError(f"duplicate tool name {tool.spec.name!r}")
            new_set[tool.spec.name] = tool
        with self._lock:
            self._tools = new_set
            self.generation += 1

    def get(self, name: str) -> BoundTool | None:
        with self._lock:
            return self._tools.get(name)

    def list(self) -> list[BoundTool]:
        with self._lock:
            return list(self._tools.values())

    def record_event(self, kind: str, screen_id: str, detail: str) -> GuiEvent:
        with self._lock:
            timestamp = max(time.time(), self._last_timestamp)
            self._last_timestamp = timestamp
            event = GuiEvent(timestamp, kind, screen_id, detail)
            self.gui_events.append(event)
            return event

    def events(self) -> list[GuiEvent]:
        with self._lock:
            return list(self.gui_events)


class McpServer:
    """JSON-RPC 2.0 message handler implementing the MCP surface.

    Methods: initialize, tools/list, tools/call, resources/list,
    resources/read; outgoing notifications/tools/list_changed. Transports
    (stdio, streamable HTTP) feed messages in and drain queued notifications
    after each handled message.

    Assistant-role message drafting for GUI events is off by default (the
    resource is the safe channel); opt in with ``assistant_drafts=True`` to
    additionally queue non-actionable draft notifications.
    """

    def __init__(
        self,
        session: GuiSession,
        server_name: str = "guibridge",
        event_capacity: int = EVENT_CAPACITY,
        assistant_drafts: bool = False,
    ):
        self.session = session
        self.server_name = server_name
        self.registry = SessionRegistry(event_capacity)
        self.assistant_drafts = assistant_drafts
        self.initialized = False
        self._pending: deque[dict[str, Any]] = deque()
        self.notifications_sent = 0
        # seed without a notification; nobody is listening yet
        self.registry.replace(session.composed_tools())
        session.subscribe(self._on_transition)

    # -- session listener ------------------------------------------------------

    def _on_transition(self, transition: GuiTransition, feedback: FeedbackPlan | None, source: str) -> None:
        if source == "ui":
            kind = "user_click"
        elif transition.kind == "parameter_edit":
            kind = "parameter_edit"
        else:
            kind = "navigation"
        if transition.kind != "noop" or source == "ui":
            detail = transition.link or ""
            if transition.kind == "parameter_edit" and transition.applied:
                detail = "set " + ", ".join(f"{k}" for k in transition.applied)
            self.registry.record_event(kind, transition.to_screen, detail)
        self.replace_tools(self.session.composed_tools())
        if self.assistant_drafts and feedback is not None:
            self._pending.append(
                {
                    "jsonrpc": "2.0",
                    "method": "notifications/message",
                    "params": {
                        "level": "info",
                        "data": {"role": "assistant", "content": feedback.speech_text},
                    },
                }
            )

    def replace_tools(self, tools: list[BoundTool]) -> None:
        """Swap the published set atomically; one list_changed per swap."""
        self.registry.replace(tools)
        self._pending.append(
            {"jsonrpc": "2.0", "method": "notifications/tools/list_changed"}
        )
        self.notifications_sent += 1

    def drain_notifications(self) -> list[dict[str, Any]]:
        out = []
        while self._pending:
            out.append(self._pending.popleft())
        return out

    # -- message handling ---------------------------------------------------------

    def handle_message(self, message: dict[str, Any]) -> dict[str, Any] | None:
        """Handle one JSON-RPC message; returns the response, or None for
        notifications."""
        method = message.get("method")
        msg_id = message.get("id")
        params = message.get("params") or {}

        if msg_id is None:
            # client notification; nothing to answer
            return None

        if method == "initialize":
            self.initialized = True
            return self._result(
                msg_id,
                {
                    "protocolVersion": PROTOCOL_VERSION,
                    "capabilities": {
                        "tools": {"listChanged": True},
                        "resources": {},
                    },
                    "serverInfo": {"name": self.server_name, "version": __version__},
                },
            )
        if not self.initialized:
            return self._error(msg_id, NOT_INITIALIZED, "session not initialized")
        if method == "tools/list":
            return self._result(
                msg_id,
                {
                    "tools": [t.spec.as_mcp() for t in self.registry.list()],
                    "_meta": {"generation": self.registry.generation},
                },
            )
        if method == "tools/call":
            return self._call_tool(msg_id, params)
        if method == "resources/list":
            return self._result(
                msg_id,
                {
                    "resources": [
                        {
                            "uri": EVENTS_URI,
                            "name": "last-gui-events",
                            "description": "Recent GUI events (navigations, edits, clicks), newest last",
                            "mimeType": "application/json",
                        }
                    ]
                },
            )
        if method == "resources/read":
            uri = params.get("uri")
            if uri != EVENTS_URI:
                return self._error(msg_id, RESOURCE_NOT_FOUND, f"resource not found: {uri}")
            payload = {"events": [e.as_dict() for e in self.registry.events()]}
            return self._result(
                msg_id,
                {
                    "contents": [
                        {
                            "uri": EVENTS_URI,
                            "mimeType": "application/json",
                            "text": json.dumps(payload, sort_keys=True),
                        }
                    ]
                },
            )
        return self._error(msg_id, METHOD_NOT_FOUND, f"method not found: {method}")

    def _call_tool(self, msg_id: Any, params: dict[str, Any]) -> dict[str, Any]:
        name = params.get("name", "")
        arguments = params.get("arguments") or {}
        if self.registry.get(name) is None:
            return self._error(msg_id, INVALID_PARAMS, f"tool not found: {name}")
        try:
            turn = self.session.handle_call(ToolCall(name, arguments))
        except UnknownRouteError:
            return self._error(msg_id, INVALID_PARAMS, f"tool not found: {name}")
        except DispatchError as exc:
            text = f"Error in parameter {exc.parameter!r}: {exc}" if exc.parameter else str(exc)
            return self._tool_result(msg_id, text, is_error=True)
        except RouteError as exc:
            return self._tool_result(msg_id, str(exc), is_error=True)
        return self._tool_result(msg_id, turn.result.text, is_error=turn.result.is_error)

    def _tool_result(self, msg_id: Any, text: str, is_error: bool = False) -> dict[str, Any]:
        return self._result(
            msg_id,
            {
                "content": [{"type": "text", "text": cap_text(text)}],
                "isError": is_error,
            },
        )

    @staticmethod
    def _result(msg_id: Any, result: dict[str, Any]) -> dict[str, Any]:
        return {"jsonrpc": "2.0", "id": msg_id, "result": result}

    @staticmethod
    def _error(msg_id: Any, code: int, message: str) -> dict[str, Any]:
        return {"jsonrpc": "2.0", "id": msg_id, "error": {"code": code, "message": message}}


def cap_text(text: str, max_bytes: int = TOOL_RESULT_MAX_BYTES) -> str:
    """Keep the head of oversized result text, dropping the tail."""
    encoded = text.encode("utf-8")
    if len(encoded) <= max_bytes:
        return text
    keep = max_bytes - len(TRUNCATION_MARKER.encode("utf-8"))
    head = encoded[:keep].decode("utf-8", errors="ignore")
    return head + TRUNCATION_MARKER
