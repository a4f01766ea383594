"""Conversation orchestration: context assembly, model calls, and routing.

One utterance flows through: fast-path command check, prompt assembly
(system prompt, history, ordered tools, current screen snapshot), the model
call, schema repair, and finally dispatch into the GUI. The orchestrator
works against a backend abstraction so it can run embedded in the
application or as a client of the MCP endpoint.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Protocol, Sequence

import httpx

from .fastpath import CommandPattern, match_user_input
from .routegraph import RouteError, UnknownRouteError
from .sap import RepairLog
from .session import GuiSession, SessionTurn
from .tools import ToolCall, ToolSpec
from .viewmodel import FeedbackPlan, GuiTransition

ENTRY_KINDS = ("user_text", "assistant_text", "tool_call", "tool_result", "gui_transition")

DEFAULT_OUTPUT_CONTRACT = (
    "Always respond with a tool call and never ask for clarification or reply in plain text."
)


@dataclass
class ConversationEntry:
    """One turn fragment of assistant history."""

    kind: str
    payload: Any
    timestamp: float = field(default_factory=time.time)


@dataclass(frozen=True)
class HistoryPolicy:
    """What happens to conversation history when the screen changes.

    ``keep_all`` retains everything (fine for strong models);
    ``clear_on_screen_change`` wipes it so weaker models are not confused by
    stale turns; ``keep_last_n`` is the middle ground. In every case the new
    screen identifier is appended afterwards as a transition marker.
    """

    name: str = "keep_all"
    n: int = 0

    @classmethod
    def parse(cls, text: str) -> "HistoryPolicy":
        if text == "keep_all":
            return cls("keep_all")
        if text == "clear_on_screen_change":
            return cls("clear_on_screen_change")
        if text.startswith("keep_last_"):
            return cls("keep_last_n", int(text.rsplit("_", 1)[1]))
        raise ValueError(f"unknown history policy {text!r}")

    def trim(self, entries: list[ConversationEntry]) -> list[ConversationEntry]:
        if self.name == "clear_on_screen_change":
            return []
        if self.name == "keep_last_n":
            return entries[-self.n :] if self.n else []
        return list(entries)


KEEP_ALL = HistoryPolicy("keep_all")
CLEAR_ON_SCREEN_CHANGE = HistoryPolicy("clear_on_screen_change")


def keep_last_n(n: int) -> HistoryPolicy:
    return HistoryPolicy("keep_last_n", n)


@dataclass
class PromptBundle:
    """Everything one model request is assembled from."""

    system_prompt: str
    history: list[ConversationEntry]
    tools: list[ToolSpec]
    screen_parameters: dict[str, Any]
    output_contract: str = DEFAULT_OUTPUT_CONTRACT

    def system_message(self) -> str:
        parts = [self.system_prompt]
        if self.screen_parameters:
            parts.append("Current screen parameters:\n" + json.dumps(self.screen_parameters, sort_keys=True))
        parts.append(self.output_contract)
        return "\n\n".join(p for p in parts if p)

    def messages(self) -> list[dict[str, Any]]:
        out: list[dict[str, Any]] = [{"role": "system", "content": self.system_message()}]
        for entry in self.history:
            out.extend(_entry_messages(entry))
        return out


def _entry_messages(entry: ConversationEntry) -> list[dict[str, Any]]:
    if entry.kind == "user_text":
        return [{"role": "user", "content": entry.payload}]
    if entry.kind == "assistant_text":
        return [{"role": "assistant", "content": entry.payload}]
    if entry.kind == "tool_call":
        call_id, call = entry.payload["id"], entry.payload["call"]
        return [
            {
                "role": "assistant",
                "content": None,
                "tool_calls": [
                    {
                        "id": call_id,
                        "type": "function",
                        "function": {"name": call.name, "arguments": json.dumps(call.arguments)},
                    }
                ],
            }
        ]
    if entry.kind == "tool_result":
        return [
            {
                "role": "tool",
                "tool_call_id": entry.payload["id"],
                "content": entry.payload["text"],
            }
        ]
    if entry.kind == "gui_transition":
        return [{"role": "assistant", "content": f"[screen changed to {entry.payload}]"}]
    raise ValueError(f"unknown entry kind {entry.kind!r}")


# -- model clients ------------------------------------------------------------


class ModelClient:
    """Chat-with-tools client; keeps a call log (count, latencies)."""

    def __init__(self) -> None:
        self.requests: list[dict[str, Any]] = []
        self.latencies: list[float] = []

    @property
    def request_count(self) -> int:
        return len(self.requests)

    def chat(self, request: dict[str, Any]) -> dict[str, Any]:
        self.requests.append(request)
        started = time.perf_counter()
        try:
            return self._send(request)
        finally:
            self.latencies.append(time.perf_counter() - started)

    def _send(self, request: dict[str, Any]) -> dict[str, Any]:
        raise NotImplementedError


class ModelTransportError(RuntimeError):
    """The model endpoint could not be reached or returned garbage."""


class HttpModelClient(ModelClient):
    """Client for a chat-completions style HTTP endpoint."""

    def __init__(self, endpoint: str, model: str, timeout: float = 120.0, client: httpx.Client | None = None):
        super().__init__()
        if not endpoint.rstrip("/").endswith("/chat/completions"):
            endpoint = endpoint.rstrip("/") + "/chat/completions"
        self.endpoint = endpoint
        self.model = model
        self._http = client or httpx.Client(timeout=timeout)

    def _send(self, request: dict[str, Any]) -> dict[str, Any]:
        payload = dict(request)
        payload.setdefault("model", self.model)
        try:
            response = self._http.post(self.endpoint, json=payload)
            response.raise_for_status()
            return response.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise ModelTransportError(str(exc)) from exc


class ScriptedModelClient(ModelClient):
    """Deterministic stand-in for a model endpoint.

    Scripted items are consumed in order; each is either
    ``{"tool_call": {"name": ..., "arguments": {...}}}``, ``{"text": ...}``,
    or ``{"error": ...}`` (raises a transport error). A callable script
    receives the request and returns such an item, for mocks that need to
    look at the prompt.
    """

    def __init__(self, script: Sequence[dict[str, Any]] | Callable[[dict[str, Any]], dict[str, Any]]):
        super().__init__()
        self._script = script
        self._cursor = 0

    def _next_item(self, request: dict[str, Any]) -> dict[str, Any]:
        if callable(self._script):
            return self._script(request)
        if self._cursor >= len(self._script):
            raise ModelTransportError("scripted client exhausted")
        item = self._script[self._cursor]
        self._cursor += 1
        return item

    def _send(self, request: dict[str, Any]) -> dict[str, Any]:
        item = self._next_item(request)
        if "error" in item:
            raise ModelTransportError(str(item["error"]))
        return scripted_response(item)


def scripted_response(item: dict[str, Any]) -> dict[str, Any]:
    """Chat-completions response shape for a scripted item."""
    message: dict[str, Any] = {"role": "assistant", "content": item.get("text")}
    if "tool_call" in item and item["tool_call"] is not None:
        call = item["tool_call"]
        message["tool_calls"] = [
            {
                "id": "call_0",
                "type": "function",
                "function": {
                    "name": call["name"],
                    "arguments": json.dumps(call.get("arguments", {})),
                },
            }
        ]
    return {"choices": [{"message": message}]}


def first_tool_call(response: dict[str, Any]) -> ToolCall | None:
    """Extract the first tool call from a chat-completions response."""
    try:
        message = response["choices"][0]["message"]
    except (KeyError, IndexError, TypeError):
        return None
    calls = message.get("tool_calls") or []
    if not calls:
        return None
    function = calls[0].get("function", {})
    arguments = function.get("arguments", {})
    if isinstance(arguments, str):
        try:
            arguments = json.loads(arguments) if arguments.strip() else {}
        except json.JSONDecodeError:
            arguments = {}
    return ToolCall(function.get("name", ""), arguments)


def response_text(response: dict[str, Any]) -> str | None:
    try:
        return response["choices"][0]["message"].get("content")
    except (KeyError, IndexError, TypeError):
        return None


# -- GUI backends ----------------------------------------------------------------


class GuiBackend(Protocol):
    """What the orchestrator needs from the application side.

    The embedded implementation talks to the in-process session; the MCP
    implementation speaks the protocol to a served endpoint.
    """

    def tool_specs(self) -> list[ToolSpec]: ...

    def patterns(self) -> list[CommandPattern]: ...

    def execute(self, call: ToolCall) -> SessionTurn: ...

    def run_command(self, command_id: str) -> SessionTurn: ...

    def verbalize(self, call: ToolCall) -> str: ...

    def screen_parameters(self) -> dict[str, Any]: ...


class EmbeddedBackend:
    """In-process backend: the assistant lives inside the application."""

    def __init__(self, session: GuiSession):
        self.session = session

    def tool_specs(self) -> list[ToolSpec]:
        return [t.spec for t in self.session.composed_tools()]

    def patterns(self) -> list[CommandPattern]:
        return self.session.patterns

    def execute(self, call: ToolCall) -> SessionTurn:
        return self.session.handle_call(call)

    def run_command(self, command_id: str) -> SessionTurn:
        outcome = self.session.execute_command(command_id)
        return SessionTurn(ToolCall(command_id), outcome, outcome.feedback)

    def verbalize(self, call: ToolCall) -> str:
        session = self.session
        current = session.active_screen
        try:
            session.graph.route(call.name)
        except UnknownRouteError:
            transition = GuiTransition(current, current)
        else:
            if call.name == current and call.arguments:
                transition = GuiTransition(current, current, applied=dict(call.arguments))
            else:
                transition = GuiTransition(current, call.name)
        return session.planner.plan_feedback(call, transition).speech_text

    def screen_parameters(self) -> dict[str, Any]:
        snapshot = self.session.state_snapshot()
        return {
            "screen_id": snapshot["screen_id"],
            "parameter_values": snapshot["parameter_values"],
        }


# -- the orchestrator ---------------------------------------------------------------


@dataclass
class AssistantTurn:
    """Everything one utterance produced."""

    utterance: str
    assistant_text: str | None = None
    tool_call: ToolCall | None = None
    result_text: str | None = None
    feedback: FeedbackPlan | None = None
    fastpath: bool = False
    model_calls: int = 0
    error: str | None = None
    repair_log: RepairLog | None = None


class TwoPhaseError(RuntimeError):
    """Phase 1 failed to select a known tool, even after one retry."""


class Assistant:
    """Per-session orchestrator; one in-flight model call at a time.

    Configuration mirrors deployment knobs: system prompt, history policy,
    fast-path on/off, two-phase tool calling on/off.
    """

    def __init__(
        self,
        backend: GuiBackend,
        client: ModelClient,
        system_prompt: str = "You are a competent translator of user expressions into tool calls for this application.",
        history_policy: HistoryPolicy = KEEP_ALL,
        fastpath: bool = True,
        two_phase: bool = False,
    ):
        self.backend = backend
        self.client = client
        self.system_prompt = system_prompt
        self.history_policy = history_policy
        self.fastpath_enabled = fastpath
        self.two_phase_enabled = two_phase
        self.history: list[ConversationEntry] = []
        self._call_counter = 0
        # one in-flight model call per session; concurrent utterances queue up
        self._turn_lock = threading.Lock()

    # -- history ---------------------------------------------------------------

    def _append(self, kind: str, payload: Any) -> ConversationEntry:
        entry = ConversationEntry(kind, payload)
        self.history.append(entry)
        return entry

    def on_gui_transition(self, screen_id: str, policy: HistoryPolicy | None = None) -> list[ConversationEntry]:
        """Trim history per policy, then append the new screen marker."""
        policy = policy or self.history_policy
        self.history = policy.trim(self.history)
        self._append("gui_transition", screen_id)
        return self.history

    # -- prompt assembly ----------------------------------------------------------

    def assemble_prompt(self) -> PromptBundle:
        return PromptBundle(
            system_prompt=self.system_prompt,
            history=list(self.history),
            tools=self.backend.tool_specs(),
            screen_parameters=self.backend.screen_parameters(),
        )

    # -- main pipeline ---------------------------------------------------------------

    def handle_utterance(self, text: str) -> AssistantTurn:
        """Route one utterance: fast path, else model call, repair, dispatch."""
        with self._turn_lock:
            return self._handle_utterance(text)

    def _handle_utterance(self, text: str) -> AssistantTurn:
        turn = AssistantTurn(utterance=text)
        calls_before = self.client.request_count
        self._append("user_text", text)

        if self.fastpath_enabled:
            match = match_user_input(text, self.backend.patterns())
            if match is not None:
                session_turn = self.backend.run_command(match.command_id)
                self._record_result(turn, session_turn)
                turn.fastpath = True
                turn.model_calls = self.client.request_count - calls_before
                return turn

        try:
            call = self._obtain_tool_call(text, turn)
        except ModelTransportError as exc:
            notice = f"The assistant is unavailable: {exc}"
            self._append("assistant_text", notice)
            turn.assistant_text = notice
            turn.error = str(exc)
            turn.model_calls = self.client.request_count - calls_before
            return turn
        except TwoPhaseError as exc:
            self._append("assistant_text", str(exc))
            turn.assistant_text = str(exc)
            turn.error = str(exc)
            turn.model_calls = self.client.request_count - calls_before
            return turn

        turn.model_calls = self.client.request_count - calls_before
        if call is None:
            if turn.assistant_text is not None:
                self._append("assistant_text", turn.assistant_text)
            return turn

        turn.tool_call = call
        try:
            session_turn = self.backend.execute(call)
        except RouteError as exc:
            parameter = getattr(exc, "parameter", None)
            message = (
                f"Could not apply parameter {parameter!r}: {exc}" if parameter else str(exc)
            )
            self._append("assistant_text", message)
            turn.assistant_text = message
            turn.error = message
            return turn
        self._record_result(turn, session_turn, call)
        return turn

    def _obtain_tool_call(self, text: str, turn: AssistantTurn) -> ToolCall | None:
        if self.two_phase_enabled:
            return self.two_phase_call(text)
        bundle = self.assemble_prompt()
        request = {
            "messages": bundle.messages(),
            "tools": [t.as_function() for t in bundle.tools],
        }
        response = self.client.chat(request)
        call = first_tool_call(response)
        if call is None:
            turn.assistant_text = response_text(response) or "(no response)"
        return call

    def _record_result(self, turn: AssistantTurn, session_turn: SessionTurn, call: ToolCall | None = None) -> None:
        call = call or session_turn.call
        call_id = f"call_{self._call_counter}"
        self._call_counter += 1
        self._append("tool_call", {"id": call_id, "call": call})
        self._append("tool_result", {"id": call_id, "text": session_turn.result.text})
        turn.tool_call = call
        turn.result_text = session_turn.result.text
        turn.feedback = session_turn.feedback
        turn.repair_log = session_turn.repair_log
        transition = session_turn.transition
        if transition is not None and transition.kind == "navigation":
            self.on_gui_transition(transition.to_screen)

    # -- two-phase tool calling ----------------------------------------------------------

    def two_phase_call(self, text: str) -> ToolCall:
        """Select the tool first, then fill its parameters; two model calls.

        With a single registered tool the selection is forced and phase one
        is skipped.
        """
        tools = self.backend.tool_specs()
        if len(tools) == 1:
            selected = tools[0]
        else:
            selected = self._phase_one(text, tools)
        bundle = self.assemble_prompt()
        request = {
            "messages": bundle.messages(),
            "tools": [selected.as_function()],
            "tool_choice": {"type": "function", "function": {"name": selected.name}},
        }
        response = self.client.chat(request)
        call = first_tool_call(response)
        arguments = call.arguments if call is not None else {}
        return ToolCall(selected.name, arguments)

    def _phase_one(self, text: str, tools: list[ToolSpec]) -> ToolSpec:
        by_name = {t.name: t for t in tools}
        listing = "\n".join(f"- {t.name}: {t.description}" for t in tools)
        prompt = (
            f"{self.system_prompt}\n\nAvailable tools:\n{listing}\n\n"
            "Reply with the single name of the tool that best handles the user request. "
            "Reply with the name only."
        )
        messages = [
            {"role": "system", "content": prompt},
            {"role": "user", "content": text},
        ]
        for attempt in range(2):
            response = self.client.chat({"messages": messages})
            name = (response_text(response) or "").strip().strip("\"'`")
            if name in by_name:
                return by_name[name]
            messages.append({"role": "assistant", "content": name})
            messages.append(
                {
                    "role": "user",
                    "content": f"{name!r} is not one of the tool names. "
                    "Reply with exactly one name from the list.",
                }
            )
        raise TwoPhaseError(f"tool selection failed: {name!r} is not a registered tool")

    # -- verbalization -------------------------------------------------------------------

    def verbalize(self, call: ToolCall) -> str:
        """Speech-text stand-in for a tool call (no audio synthesis here)."""
        return self.backend.verbalize(call)


def build_assistant(
    config: dict[str, Any],
    session: GuiSession | None = None,
    transport: Callable[[dict[str, Any]], dict[str, Any]] | None = None,
    client: ModelClient | None = None,
) -> Assistant:
    """Build an orchestrator from deployment configuration.

    Keys: ``mode`` (embedded | mcp), ``endpoint`` (chat-completions URL),
    ``model``, ``history_policy`` (keep_all | clear_on_screen_change |
    keep_last_N), ``two_phase``, ``fastpath``, ``language`` (en | nl, picks
    the shipped system prompt unless ``system_prompt`` is given). Embedded
    mode needs the in-process session; mcp mode needs a message transport.
    """
    mode = config.get("mode", "embedded")
    backend: GuiBackend
    if mode == "embedded":
        if session is None:
            raise ValueError("embedded mode needs a GuiSession")
        backend = EmbeddedBackend(session)
    elif mode == "mcp":
        if transport is None:
            raise ValueError("mcp mode needs a message transport")
        from .mcp.client import McpBackend, McpClientSession

        backend = McpBackend(McpClientSession(transport))
    else:
        raise ValueError(f"unknown assistant mode {mode!r}")

    if client is None:
        endpoint = config.get("endpoint")
        if not endpoint:
            raise ValueError("config needs an 'endpoint' or an explicit model client")
        client = HttpModelClient(endpoint, config.get("model", "model"))

    system_prompt = config.get("system_prompt")
    if system_prompt is None and config.get("language"):
        from .evalkit import default_system_prompt

        system_prompt = default_system_prompt(config["language"])

    kwargs: dict[str, Any] = {}
    if system_prompt is not None:
        kwargs["system_prompt"] = system_prompt
    return Assistant(
        backend,
        client,
        history_policy=HistoryPolicy.parse(config.get("history_policy", "keep_all")),
        fastpath=bool(config.get("fastpath", True)),
        two_phase=bool(config.get("two_phase", False)),
        **kwargs,
    )
