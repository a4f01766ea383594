"""Client side: drive an MCP server and adapt it as an assistant backend.

The orchestrator can run embedded in the application or across the protocol
barrier; this module provides the latter. Tool results arrive as screen
text, and GUI context comes from the last-gui-events resource rather than
in-process objects.
"""

from __future__ import annotations

import json
from typing import Any, Callable

from ..fastpath import CommandPattern
from ..routegraph import DispatchError, UnknownRouteError
from ..sap import RepairLog
from ..session import SessionTurn
from ..tools import ParameterSpec, ToolCall, ToolResult, ToolSpec
from ..viewmodel import FeedbackPlan, GuiTransition, ToolOutcome
from .server import EVENTS_URI, McpServer


class McpClientSession:
    """Minimal MCP client over a message-passing transport.

    ``transport`` takes one JSON-RPC request dict and returns the response
    dict; :func:`in_process_transport` wires it straight to a server in the
    same process, which is also how the conformance tests drive the wire
    shapes.
    """

    def __init__(self, transport: Callable[[dict[str, Any]], dict[str, Any]]):
        self._transport = transport
        self._next_id = 0
        self.server_info: dict[str, Any] = {}

    def _request(self, method: str, params: dict[str, Any] | None = None) -> dict[str, Any]:
        self._next_id += 1
        message: dict[str, Any] = {"jsonrpc": "2.0", "id": self._next_id, "method": method}
        if params is not None:
            message["params"] = params
        response = self._transport(message)
        if "error" in response:
            error = response["error"]
            raise McpError(error.get("code", 0), error.get("message", ""))
        return response.get("result", {})

    def initialize(self) -> dict[str, Any]:
        result = self._request("initialize", {"clientInfo": {"name": "guibridge-client"}})
        self.server_info = result.get("serverInfo", {})
        return result

    def list_tools(self) -> list[dict[str, Any]]:
        return self._request("tools/list").get("tools", [])

    def call_tool(self, name: str, arguments: dict[str, Any]) -> dict[str, Any]:
        return self._request("tools/call", {"name": name, "arguments": arguments})

    def read_resource(self, uri: str) -> dict[str, Any]:
        return self._request("resources/read", {"uri": uri})

    def last_gui_events(self) -> list[dict[str, Any]]:
        result = self.read_resource(EVENTS_URI)
        text = result["contents"][0]["text"]
        return json.loads(text).get("events", [])


class McpError(RuntimeError):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def in_process_transport(server: McpServer) -> Callable[[dict[str, Any]], dict[str, Any]]:
    def transport(message: dict[str, Any]) -> dict[str, Any]:
        response = server.handle_message(message)
        return response if response is not None else {}

    return transport


def spec_from_mcp(doc: dict[str, Any]) -> ToolSpec:
    """Reconstruct a ToolSpec from an MCP tool description."""
    schema = doc.get("inputSchema") or {}
    parameters = []
    plain = True
    for name, prop in (schema.get("properties") or {}).items():
        if "enum" in prop:
            parameters.append(ParameterSpec(name, prop.get("description", ""), "enum", tuple(prop["enum"])))
        elif prop.get("type") in ("string", "integer", "number", "boolean"):
            parameters.append(ParameterSpec(name, prop.get("description", ""), prop["type"]))
        else:
            plain = False
    if plain:
        return ToolSpec(doc["name"], doc.get("description", ""), tuple(parameters))
    return ToolSpec(doc["name"], doc.get("description", ""), (), input_schema=schema)


class McpBackend:
    """Assistant backend speaking MCP instead of touching the session.

    Screen changes are observed through the last-gui-events resource, which
    is also what gives history policies their screen identifiers.
    """

    def __init__(self, client: McpClientSession):
        self.client = client
        client.initialize()
        self._last_screen: str | None = None

    def tool_specs(self) -> list[ToolSpec]:
        return [spec_from_mcp(doc) for doc in self.client.list_tools()]

    def patterns(self) -> list[CommandPattern]:
        # command patterns live app-side; over MCP the matcher is exposed as
        # a plain tool instead
        return []

    def _result_text(self, result: dict[str, Any]) -> tuple[str, bool]:
        content = result.get("content") or []
        text = "".join(c.get("text", "") for c in content if c.get("type") == "text")
        return text, bool(result.get("isError"))

    def execute(self, call: ToolCall) -> SessionTurn:
        try:
            result = self.client.call_tool(call.name, call.arguments)
        except McpError as exc:
            if "tool not found" in str(exc):
                raise UnknownRouteError(str(exc)) from None
            raise
        text, is_error = self._result_text(result)
        if is_error:
            raise DispatchError(text, parameter=_parameter_from_error(text))
        events = self.client.last_gui_events()
        transition = None
        if events:
            latest = events[-1]
            previous = self._last_screen
            self._last_screen = latest["screen_id"]
            transition = GuiTransition(
                from_screen=previous,
                to_screen=latest["screen_id"],
                applied=dict(call.arguments),
                link=latest.get("detail") or None,
            )
        outcome = ToolOutcome(ToolResult(text, is_error), transition)
        return SessionTurn(call, outcome, feedback=None, repair_log=RepairLog())

    def run_command(self, command_id: str) -> SessionTurn:
        raise UnknownRouteError(f"commands are app-side over MCP: {command_id!r}")

    def verbalize(self, call: ToolCall) -> str:
        for doc in self.client.list_tools():
            if doc["name"] == call.name:
                return "Showing " + (doc.get("description") or call.name)
        return f"Calling {call.name}"

    def screen_parameters(self) -> dict[str, Any]:
        events = self.client.last_gui_events()
        if not events:
            return {}
        return {"screen_id": events[-1]["screen_id"]}


def _parameter_from_error(text: str) -> str | None:
    # server error text shape: "Error in parameter 'x': ..."
    if "parameter '" in text:
        return text.split("parameter '", 1)[1].split("'", 1)[0]
    return None
