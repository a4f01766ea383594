"""ViewModels: per-screen state, tool composition, and multimodal feedback.

A ViewModel backs one screen. It holds the screen's parameter values, knows
how to render itself as text for the assistant, publishes tools (its own plus
the router's, ordered so the current screen comes first), and plans the
spoken/graphical feedback after a tool call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any, Callable, Iterable, Sequence

from .tools import ParameterSpec, ToolCall, ToolResult, ToolSpec, render_value

if TYPE_CHECKING:
    from .routegraph import DocumentedRoute


class Provenance(str, enum.Enum):
    """Where a screen parameter value came from."""

    FROM_USER_SPEECH = "from_user_speech"
    FROM_GUI_INPUT = "from_gui_input"
    FROM_STORAGE = "from_storage"


@dataclass(frozen=True)
class ViewContext:
    """Immutable snapshot of one screen's state.

    Every present value carries a provenance flag. Updates go through
    :func:`apply_parameters`, which returns a new snapshot; a ViewModel swaps
    the whole snapshot in one assignment so readers never see a half-applied
    parameter set.
    """

    screen_id: str
    parameter_values: dict[str, Any] = field(default_factory=dict)
    dirty_flags: dict[str, Provenance] = field(default_factory=dict)


@dataclass(frozen=True)
class GuiTransition:
    """One observable GUI change produced by a tool call or command."""

    from_screen: str | None
    to_screen: str
    applied: dict[str, Any] = field(default_factory=dict)
    new_instance: bool = False
    link: str | None = None

    @property
    def kind(self) -> str:
        if self.from_screen != self.to_screen:
            return "navigation"
        if self.applied:
            return "parameter_edit"
        return "noop"


@dataclass
class ToolOutcome:
    """What executing a bound tool produced: result text plus GUI change."""

    result: ToolResult
    transition: GuiTransition | None = None
    detail: Any = None
    feedback: "FeedbackPlan | None" = None
    # set once the transition has been announced to session listeners
    emitted: bool = False


@dataclass(frozen=True)
class BoundTool:
    """A tool spec paired with an invocable handler.

    The handler captures its target (a ViewModel or the router) at
    construction; invoking it never requires another lookup.
    """

    spec: ToolSpec
    handler: Callable[[dict[str, Any]], ToolOutcome]


@dataclass
class FeedbackPlan:
    """Multimodal feedback for one turn: speech text, highlights, replay link."""

    speech_text: str
    highlight_targets: list[str] = field(default_factory=list)
    history_entry: str | None = None


class CompositionError(ValueError):
    """Tool names collide when composing a ViewModel hierarchy."""


def apply_parameters(ctx: ViewContext, args: dict[str, Any], is_new_instance: bool) -> ViewContext:
    """Merge args into a screen snapshot, or start a fresh instance.

    ``is_new_instance`` resets the screen to defaults before applying, so a
    "create another one" request does not inherit leftover fields; otherwise
    args merge over the existing values (corrections and continuations).
    Applied values are flagged as spoken input.
    """
    if is_new_instance:
        values: dict[str, Any] = {}
        flags: dict[str, Provenance] = {}
    else:
        values = dict(ctx.parameter_values)
        flags = dict(ctx.dirty_flags)
    for name, value in args.items():
        values[name] = value
        flags[name] = Provenance.FROM_USER_SPEECH
    return ViewContext(ctx.screen_id, values, flags)


def default_label(screen_id: str) -> str:
    return screen_id.replace("-", " ").replace("_", " ").title()


class ViewModel:
    """State holder and tool publisher for one screen.

    Mutations replace the whole :class:`ViewContext` atomically; reads off the
    protocol thread see either the old or the new snapshot, never a mixture.
    """

    def __init__(
        self,
        route: "DocumentedRoute",
        path: Sequence[str],
        label: str | None = None,
        actions: Sequence[str] | None = None,
        self_tool: bool = False,
        priority: int = 0,
    ):
        self.route = route
        self.path = tuple(path)
        self.screen_id = route.name
        self.label = label or default_label(route.name)
        self._actions = list(actions) if actions is not None else None
        self.self_tool_enabled = self_tool
        self.priority = priority
        self.local_tools: list[BoundTool] = []
        self.children: list[ViewModel] = []
        self.context = ViewContext(screen_id=route.name)

    def apply(self, args: dict[str, Any], is_new_instance: bool = False) -> None:
        self.context = apply_parameters(self.context, args, is_new_instance)

    def set_from_storage(self, values: dict[str, Any]) -> None:
        """Seed fields from backing data (e.g. the stored credit limit)."""
        ctx = self.context
        merged = dict(ctx.parameter_values)
        flags = dict(ctx.dirty_flags)
        for name, value in values.items():
            merged[name] = value
            flags[name] = Provenance.FROM_STORAGE
        self.context = replace(ctx, parameter_values=merged, dirty_flags=flags)

    @property
    def actions(self) -> list[str]:
        if self._actions is not None:
            return list(self._actions)
        return [t.spec.name for t in self.local_tools]

    def add_local_tool(self, spec: ToolSpec, handler: Callable[[dict[str, Any]], ToolOutcome]) -> None:
        self.local_tools.append(BoundTool(spec, handler))

    def screen_text(self) -> str:
        return screen_text(self.context, self.route.parameters, self.label, self.actions)

    def self_tool(self) -> BoundTool:
        """A view-local tool standing in for this screen's router tool.

        Its description additionally reports which fields are already filled
        and which are still empty, so the model can target the gaps.
        """
        filled = [p.name for p in self.route.parameters if p.name in self.context.parameter_values]
        empty = [p.name for p in self.route.parameters if p.name not in self.context.parameter_values]
        description = self.route.description
        if filled:
            description += " Filled fields: " + ", ".join(filled) + "."
        if empty:
            description += " Empty fields: " + ", ".join(empty) + "."
        spec = ToolSpec(self.screen_id, description, self.route.parameters)

        def handle(args: dict[str, Any]) -> ToolOutcome:
            self.apply(args, is_new_instance=False)
            transition = GuiTransition(self.screen_id, self.screen_id, applied=dict(args))
            return ToolOutcome(ToolResult(self.screen_text()), transition)

        return BoundTool(spec, handle)


def screen_text(
    ctx: ViewContext,
    parameters: Sequence[ParameterSpec],
    label: str,
    actions: Sequence[str] = (),
) -> str:
    """Deterministic line-oriented rendering of a screen.

    Title, then ``name: value`` for each filled parameter in declaration
    order, then one line listing the available actions. This text is what the
    assistant receives as the tool result.
    """
    lines = [label]
    filled = [p for p in parameters if p.name in ctx.parameter_values]
    if filled:
        for p in filled:
            lines.append(f"{p.name}: {render_value(ctx.parameter_values[p.name])}")
    else:
        lines.append("no fields filled")
    lines.append("actions: " + (", ".join(actions) if actions else "none"))
    return "\n".join(lines)


def compose_tools(active: ViewModel, router_tools: Sequence[BoundTool]) -> list[BoundTool]:
    """Order the published tool list around the active screen.

    The current screen's tool goes first (models prefer earlier-listed tools),
    followed by the view's local tools, then the remaining router tools in
    their original order. The current-screen router tool is moved, not
    copied; when the ViewModel opts into a self-tool, that replaces it.
    """
    current: BoundTool | None = None
    rest: list[BoundTool] = []
    for tool in router_tools:
        if tool.spec.name == active.screen_id and current is None:
            current = tool
        else:
            rest.append(tool)
    if active.self_tool_enabled:
        current = active.self_tool()
    out: list[BoundTool] = []
    if current is not None:
        out.append(current)
    out.extend(active.local_tools)
    out.extend(rest)
    return out


def compose_hierarchy(root: ViewModel) -> list[BoundTool]:
    """Collect tools from a ViewModel tree (workspace, windows, panels).

    Each node contributes its own tools before its children's; siblings are
    visited in ascending priority (stable for equal priorities). A name
    collision anywhere in the composed set is a configuration problem and
    raises, naming both owners.
    """
    owners: dict[str, str] = {}
    out: list[BoundTool] = []

    def visit(node: ViewModel) -> None:
        for tool in node.local_tools:
            name = tool.spec.name
            if name in owners:
                raise CompositionError(
                    f"tool {name!r} exposed by both {owners[name]!r} and {node.screen_id!r}"
                )
            owners[name] = node.screen_id
            out.append(tool)
        for child in sorted(node.children, key=lambda vm: vm.priority):
            visit(child)

    visit(root)
    return out


class ViewModelRegistry:
    """Active ViewModels for a session, keyed by screen id.

    ViewModels are created on first activation and kept alive, so returning
    to a screen finds its fields as the user left them.
    """

    def __init__(self) -> None:
        self._instances: dict[str, ViewModel] = {}
        self._settings: dict[str, dict[str, Any]] = {}
        self._tool_builders: dict[str, Callable[[ViewModel], Iterable[BoundTool]]] = {}
        self.active: ViewModel | None = None

    def configure(
        self,
        screen_id: str,
        *,
        label: str | None = None,
        actions: Sequence[str] | None = None,
        self_tool: bool = False,
        priority: int = 0,
    ) -> None:
        self._settings[screen_id] = {
            "label": label,
            "actions": actions,
            "self_tool": self_tool,
            "priority": priority,
        }

    def register_local_tools(
        self, screen_id: str, builder: Callable[[ViewModel], Iterable[BoundTool]]
    ) -> None:
        """Builder runs once when the screen's ViewModel is created."""
        self._tool_builders[screen_id] = builder

    def get(self, screen_id: str) -> ViewModel | None:
        return self._instances.get(screen_id)

    @property
    def active_screen(self) -> str | None:
        return self.active.screen_id if self.active else None

    def instance(self, route: "DocumentedRoute", path: Sequence[str]) -> ViewModel:
        vm = self._instances.get(route.name)
        if vm is None:
            settings = self._settings.get(route.name, {})
            vm = ViewModel(
                route,
                path,
                label=settings.get("label"),
                actions=settings.get("actions"),
                self_tool=settings.get("self_tool", False),
                priority=settings.get("priority", 0),
            )
            builder = self._tool_builders.get(route.name)
            if builder:
                vm.local_tools.extend(builder(vm))
            self._instances[route.name] = vm
        return vm

    def activate(self, route: "DocumentedRoute", path: Sequence[str]) -> tuple[ViewModel, str | None]:
        """Activate (creating if needed) and return (viewmodel, previous screen id)."""
        previous = self.active_screen
        vm = self.instance(route, path)
        self.active = vm
        return vm, previous


class FeedbackPlanner:
    """Turns tool-call outcomes into speech text, highlights, and replay links.

    Verbalization defaults to "Showing <screen description>" for navigations
    and "Set <param> to <value>" for in-place edits; both the phrase and the
    highlight targets are overridable per route.
    """

    def __init__(
        self,
        descriptions: dict[str, str] | None = None,
        paths: dict[str, Sequence[str]] | None = None,
        speech_overrides: dict[str, str] | None = None,
        highlight_overrides: dict[str, Sequence[str]] | None = None,
    ):
        self.descriptions = descriptions or {}
        self.paths = {k: tuple(v) for k, v in (paths or {}).items()}
        self.speech_overrides = speech_overrides or {}
        self.highlight_overrides = {k: list(v) for k, v in (highlight_overrides or {}).items()}

    @classmethod
    def for_graph(cls, graph, feedback_config: dict[str, dict[str, Any]] | None = None) -> "FeedbackPlanner":
        descriptions = {}
        paths = {}
        for route, path in graph.walk():
            descriptions[route.name] = route.description
            paths[route.name] = path
        speech = {}
        highlights = {}
        for name, conf in (feedback_config or {}).items():
            if "speech" in conf:
                speech[name] = conf["speech"]
            if "highlights" in conf:
                highlights[name] = conf["highlights"]
        return cls(descriptions, paths, speech, highlights)

    def plan_feedback(self, call: ToolCall, outcome: GuiTransition) -> FeedbackPlan:
        screen = outcome.to_screen
        if outcome.kind == "parameter_edit":
            parts = [f"{name} to {render_value(value)}" for name, value in outcome.applied.items()]
            speech = "Set " + " and ".join(parts)
            highlights = [f"field:{name}" for name in outcome.applied]
        else:
            speech = self.speech_overrides.get(screen) or (
                "Showing " + self.descriptions.get(screen, screen)
            )
            if outcome.kind == "navigation":
                highlights = self.highlight_overrides.get(
                    screen, [f"nav:{segment}" for segment in self.paths.get(screen, (screen,))]
                )
            else:
                highlights = []
        return FeedbackPlan(speech, list(highlights), history_entry=outcome.link)
