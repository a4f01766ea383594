"""One GUI session: the dispatch stream tying router, views, and commands.

A session owns the route graph, the live ViewModels, the repair tables, and
the fast-path command patterns. Everything that mutates GUI state funnels
through it, serialized, so listeners (the MCP endpoint, the demo backend, an
embedded assistant) observe one ordered stream of transitions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .fastpath import CommandMatch, CommandPattern, as_tool, match_user_input, patterns_from_config
from .routegraph import (
    DeepLink,
    DispatchError,
    RouteGraph,
    UnknownRouteError,
    graph_from_dicts,
    parse_deeplink,
)
from .sap import RepairLog, SynonymTable, repair_call, synonyms_from_config
from .tools import ConfigurationError, ToolCall, ToolResult
from .viewmodel import (
    BoundTool,
    FeedbackPlan,
    FeedbackPlanner,
    GuiTransition,
    ToolOutcome,
    ViewModelRegistry,
    compose_tools,
)

TransitionListener = Callable[[GuiTransition, "FeedbackPlan | None", str], None]

_APP_CONFIG_KEYS = {"routes", "labels", "synonyms", "commands", "feedback"}


@dataclass
class AppConfig:
    """Declarative application description: routes plus the app-level tables."""

    graph: RouteGraph
    labels: dict[str, str] = field(default_factory=dict)
    synonyms: dict[str, SynonymTable] = field(default_factory=dict)
    patterns: list[CommandPattern] = field(default_factory=list)
    feedback: dict[str, dict[str, Any]] = field(default_factory=dict)


def load_app_config(doc: dict[str, Any]) -> AppConfig:
    """Load an app config document: routes, labels, synonyms, commands, feedback."""
    unknown = set(doc) - _APP_CONFIG_KEYS
    if unknown:
        raise ConfigurationError(f"config: unknown sections {sorted(unknown)}")
    if "routes" not in doc:
        raise ConfigurationError("config: missing 'routes'")
    return AppConfig(
        graph=graph_from_dicts(doc["routes"]),
        labels=dict(doc.get("labels", {})),
        synonyms=synonyms_from_config(doc.get("synonyms", {})),
        patterns=patterns_from_config(doc.get("commands", [])),
        feedback=dict(doc.get("feedback", {})),
    )


@dataclass
class SessionTurn:
    """Result of routing one tool call through the session."""

    call: ToolCall
    outcome: ToolOutcome
    feedback: FeedbackPlan | None = None
    repair_log: RepairLog | None = None

    @property
    def result(self) -> ToolResult:
        return self.outcome.result

    @property
    def transition(self) -> GuiTransition | None:
        return self.outcome.transition


class GuiSession:
    """Single-GUI session; mutations are serialized on one lock.

    The composed tool list always reflects the active screen (its tool first),
    followed by view-local tools, the remaining navigation tools, and the
    regex-command fallback tool when command patterns are registered.
    """

    def __init__(self, config: AppConfig, registry: ViewModelRegistry | None = None):
        self.config = config
        self.graph = config.graph
        self.registry = registry or ViewModelRegistry()
        for screen_id, label in config.labels.items():
            self.registry.configure(screen_id, label=label)
        self.planner = FeedbackPlanner.for_graph(self.graph, config.feedback)
        self.patterns = list(config.patterns)
        self.synonyms = dict(config.synonyms)
        self._lock = threading.RLock()
        self._listeners: list[TransitionListener] = []
        self._back_stack: list[str] = []
        self._forward_stack: list[str] = []
        self._router_tools = self._bind_router_tools()
        home = self.graph.routes[0]
        self.registry.activate(home, self.graph.path_of(home.name))

    # -- tool publication ---------------------------------------------------

    def _bind_router_tools(self) -> list[BoundTool]:
        bound = []
        for spec in self.graph.to_tools():
            def handler(args: dict[str, Any], _name: str = spec.name) -> ToolOutcome:
                link = self.graph.build_deeplink(ToolCall(_name, args))
                return self.graph.dispatch(link, self.registry)

            bound.append(BoundTool(spec, handler))
        return bound

    def _matcher_tool(self) -> BoundTool | None:
        spec = as_tool(self.patterns)
        if spec is None:
            return None

        def handler(args: dict[str, Any]) -> ToolOutcome:
            match = match_user_input(str(args.get("user_input", "")), self.patterns)
            if match is None:
                return ToolOutcome(ToolResult("no command matched"), detail=None)
            outcome = self.execute_command(match.command_id)
            outcome.detail = match
            return outcome

        return BoundTool(spec, handler)

    def composed_tools(self) -> list[BoundTool]:
        with self._lock:
            active = self.registry.active
            assert active is not None
            tools = compose_tools(active, self._router_tools)
            matcher = self._matcher_tool()
            if matcher is not None:
                tools.append(matcher)
            return tools

    # -- event stream ---------------------------------------------------------

    def subscribe(self, listener: TransitionListener) -> None:
        self._listeners.append(listener)

    def _emit(self, transition: GuiTransition, feedback: FeedbackPlan | None, source: str) -> None:
        if transition.kind == "navigation" and source not in ("back", "forward"):
            if transition.from_screen is not None:
                self._back_stack.append(transition.from_screen)
            self._forward_stack.clear()
        for listener in self._listeners:
            listener(transition, feedback, source)

    # -- call routing ---------------------------------------------------------

    def handle_call(self, call: ToolCall, source: str = "assistant") -> SessionTurn:
        """Repair and execute one tool call; raises on unknown tools/parameters.

        This is the application's input gate: schema repair runs here with the
        tool's synonym table, and unrepairable parameters fail before any GUI
        state changes.
        """
        with self._lock:
            by_name = {t.spec.name: t for t in self.composed_tools()}
            tool = by_name.get(call.name)
            if tool is None:
                raise UnknownRouteError(f"tool not found: {call.name!r}")
            repaired, log = repair_call(call, tool.spec, self.synonyms.get(call.name))
            if log.flagged:
                bad = log.flagged[0]
                raise DispatchError(
                    f"parameter {bad!r} could not be repaired to match the schema",
                    parameter=bad,
                )
            outcome = tool.handler(repaired.arguments)
            if outcome.transition is not None and not outcome.emitted:
                outcome.feedback = self.planner.plan_feedback(repaired, outcome.transition)
                self._emit(outcome.transition, outcome.feedback, source)
                outcome.emitted = True
            return SessionTurn(repaired, outcome, outcome.feedback, log)

    def navigate(self, link: DeepLink | str, source: str = "ui") -> SessionTurn:
        """Execute a deep link directly (history replay, manual UI action)."""
        with self._lock:
            if isinstance(link, str):
                link = parse_deeplink(link)
            outcome = self.graph.dispatch(link, self.registry)
            assert outcome.transition is not None
            call = ToolCall(outcome.transition.to_screen, dict(outcome.transition.applied))
            outcome.feedback = self.planner.plan_feedback(call, outcome.transition)
            self._emit(outcome.transition, outcome.feedback, source)
            outcome.emitted = True
            return SessionTurn(call, outcome, outcome.feedback)

    # -- navigation commands ----------------------------------------------------

    def execute_command(self, command_id: str) -> ToolOutcome:
        """Run a fast-path command (back/forward navigation stack semantics)."""
        with self._lock:
            current = self.registry.active_screen
            assert current is not None
            if command_id == "back":
                target = self._back_stack.pop() if self._back_stack else None
                if target is not None:
                    self._forward_stack.append(current)
            elif command_id == "forward":
                target = self._forward_stack.pop() if self._forward_stack else None
                if target is not None:
                    self._back_stack.append(current)
            else:
                raise UnknownRouteError(f"unknown command {command_id!r}")

            if target is None:
                vm = self.registry.active
                assert vm is not None
                transition = GuiTransition(current, current)
            else:
                route = self.graph.route(target)
                vm, previous = self.registry.activate(route, self.graph.path_of(target))
                transition = GuiTransition(
                    previous, target, link=DeepLink(self.graph.path_of(target)).text()
                )
            feedback = self.planner.plan_feedback(ToolCall(transition.to_screen), transition)
            outcome = ToolOutcome(
                ToolResult(vm.screen_text()), transition, feedback=feedback, emitted=True
            )
            self._emit(transition, feedback, command_id)
            return outcome

    def match_command(self, text: str) -> CommandMatch | None:
        return match_user_input(text, self.patterns)

    # -- state reads -------------------------------------------------------------

    @property
    def active_screen(self) -> str:
        screen = self.registry.active_screen
        assert screen is not None
        return screen

    def screen_text(self) -> str:
        vm = self.registry.active
        assert vm is not None
        return vm.screen_text()

    def state_snapshot(self) -> dict[str, Any]:
        vm = self.registry.active
        assert vm is not None
        return {
            "screen_id": vm.screen_id,
            "label": vm.label,
            "parameter_values": dict(vm.context.parameter_values),
            "provenance": {k: v.value for k, v in vm.context.dirty_flags.items()},
            "screen_text": vm.screen_text(),
        }
