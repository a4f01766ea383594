"""The GUI tree router: documented routes, deep links, and dispatch.

The route tree is the single source of truth for what the application can
show. Each documented route doubles as a navigation tool for the assistant;
a tool call translates into a hyperlink-like deep link that activates the
target screen and fills out its parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence
from urllib.parse import parse_qsl, urlencode, urlsplit

from .tools import (
    ConfigurationError,
    ParameterSpec,
    ToolCall,
    ToolResult,
    ToolSpec,
    parameter_from_dict,
    parse_value,
    render_value,
)
from .viewmodel import GuiTransition, ToolOutcome, ViewModelRegistry

SCHEME = "app"

# Boolean parameters with these name prefixes distinguish "new instance"
# requests from corrections; dispatch consumes them instead of storing them.
NEW_INSTANCE_PREFIXES = ("isnew", "is_new")


class RouteError(ValueError):
    """Base for tool-call routing failures."""


class UnknownRouteError(RouteError):
    pass


class DispatchError(RouteError):
    """A tool call or deep link names a parameter that cannot be applied."""

    def __init__(self, message: str, parameter: str | None = None):
        super().__init__(message)
        self.parameter = parameter


@dataclass(frozen=True)
class DocumentedRoute:
    """A navigable view node: name, description, typed parameters, children.

    The description is mandatory because it becomes the tool description the
    model reads. Child names must be unique among siblings.
    """

    name: str
    description: str
    parameters: tuple[ParameterSpec, ...] = ()
    children: tuple["DocumentedRoute", ...] = ()

    def __post_init__(self) -> None:
        if not self.name or any(c.isspace() for c in self.name):
            raise ConfigurationError(f"route name {self.name!r} is not a valid identifier")
        if not self.description:
            raise ConfigurationError(f"route {self.name!r}: description must be non-empty")
        if not isinstance(self.parameters, tuple):
            object.__setattr__(self, "parameters", tuple(self.parameters))
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        names = set()
        for p in self.parameters:
            if p.name in names:
                raise ConfigurationError(f"route {self.name!r}: duplicate parameter {p.name!r}")
            names.add(p.name)
        seen = set()
        for child in self.children:
            if child.name in seen:
                raise ConfigurationError(
                    f"route {self.name!r}: duplicate child route {child.name!r}"
                )
            seen.add(child.name)

    def parameter(self, name: str) -> ParameterSpec | None:
        for p in self.parameters:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class DeepLink:
    """Structured form of an addressable view reference.

    ``path`` is the route-name segments from the root; ``query`` maps declared
    parameter names to string-rendered values, in declaration order.
    """

    path: tuple[str, ...]
    query: Mapping[str, str] = field(default_factory=dict)

    def text(self) -> str:
        """Canonical text form: app://<segments>?<url-encoded query>."""
        base = f"{SCHEME}://" + "/".join(self.path)
        if self.query:
            return base + "?" + urlencode(dict(self.query))
        return base


def parse_deeplink(text: str) -> DeepLink:
    """Parse the canonical text form back into a structured deep link."""
    parts = urlsplit(text)
    if parts.scheme != SCHEME:
        raise UnknownRouteError(f"not an app link: {text!r}")
    segments = [parts.netloc] + [s for s in parts.path.split("/") if s]
    if not segments or not segments[0]:
        raise UnknownRouteError(f"link has no route path: {text!r}")
    query: dict[str, str] = {}
    for key, value in parse_qsl(parts.query, keep_blank_values=True):
        if key in query:
            raise DispatchError(f"duplicate query parameter {key!r}", parameter=key)
        query[key] = value
    return DeepLink(tuple(segments), query)


class RouteGraph:
    """An immutable tree of documented routes.

    Route names must be unique across the whole tree so each maps to exactly
    one tool; construction fails otherwise, naming both offending paths.
    """

    def __init__(self, routes: Sequence[DocumentedRoute]):
        if not routes:
            raise ConfigurationError("route graph is empty")
        self.routes = tuple(routes)
        self._by_name: dict[str, tuple[DocumentedRoute, tuple[str, ...]]] = {}
        seen = set()
        for top in self.routes:
            if top.name in seen:
                raise ConfigurationError(f"duplicate top-level route {top.name!r}")
            seen.add(top.name)
        for route, path in self._walk(self.routes, ()):
            if route.name in self._by_name:
                other = "/".join(self._by_name[route.name][1])
                raise ConfigurationError(
                    f"duplicate route name {route.name!r} at {'/'.join(path)} and {other}"
                )
            self._by_name[route.name] = (route, path)

    @staticmethod
    def _walk(
        routes: Sequence[DocumentedRoute], prefix: tuple[str, ...]
    ) -> Iterator[tuple[DocumentedRoute, tuple[str, ...]]]:
        for route in routes:
            path = prefix + (route.name,)
            yield route, path
            yield from RouteGraph._walk(route.children, path)

    def walk(self) -> Iterator[tuple[DocumentedRoute, tuple[str, ...]]]:
        """Pre-order traversal yielding (route, path-from-root)."""
        return self._walk(self.routes, ())

    def __len__(self) -> int:
        return len(self._by_name)

    def route(self, name: str) -> DocumentedRoute:
        try:
            return self._by_name[name][0]
        except KeyError:
            raise UnknownRouteError(f"unknown route {name!r}") from None

    def path_of(self, name: str) -> tuple[str, ...]:
        try:
            return self._by_name[name][1]
        except KeyError:
            raise UnknownRouteError(f"unknown route {name!r}") from None

    def resolve(self, path: Sequence[str]) -> DocumentedRoute:
        """Resolve an ordered segment path to exactly one route."""
        if not path:
            raise UnknownRouteError("empty deep-link path")
        level: Sequence[DocumentedRoute] = self.routes
        route: DocumentedRoute | None = None
        for segment in path:
            route = next((r for r in level if r.name == segment), None)
            if route is None:
                raise UnknownRouteError(f"no route at path {'/'.join(path)!r}")
            level = route.children
        assert route is not None
        return route

    def to_tools(self) -> list[ToolSpec]:
        """One tool per documented route, in pre-order.

        The tool name is the route name and its parameter schema mirrors the
        route's parameter kinds and enumerations.
        """
        return [
            ToolSpec(route.name, route.description, route.parameters)
            for route, _ in self.walk()
        ]

    def build_deeplink(self, call: ToolCall) -> DeepLink:
        """Translate a tool call into a deep link targeting its route.

        Argument values are string-rendered (numbers in decimal, booleans as
        true/false, enum members literally); query keys follow the route's
        parameter declaration order. Raw model output should pass through
        schema repair before this point.
        """
        route = self.route(call.name)
        path = self.path_of(call.name)
        for name in call.arguments:
            if route.parameter(name) is None:
                raise DispatchError(
                    f"route {call.name!r} has no parameter {name!r}", parameter=name
                )
        query: dict[str, str] = {}
        for param in route.parameters:
            if param.name not in call.arguments:
                continue
            value = call.arguments[param.name]
            if param.kind == "enum" and value not in param.enum_values:
                raise DispatchError(
                    f"{value!r} is not a member of enum {param.name!r}", parameter=param.name
                )
            query[param.name] = render_value(value)
        return DeepLink(path, query)

    def dispatch(self, link: DeepLink, registry: ViewModelRegistry) -> ToolOutcome:
        """Activate the linked screen and deliver its parameters.

        All query values are parsed before any state changes, so a bad value
        leaves the GUI untouched (parameters apply atomically or not at all).
        Returns the receiving screen's text plus the GUI transition.
        """
        route = self.resolve(link.path)
        parsed: dict[str, Any] = {}
        for key, raw in link.query.items():
            param = route.parameter(key)
            if param is None:
                raise DispatchError(
                    f"route {route.name!r} has no parameter {key!r}", parameter=key
                )
            try:
                parsed[key] = parse_value(raw, param)
            except ValueError as exc:
                raise DispatchError(
                    f"parameter {key!r}: {exc}", parameter=key
                ) from None

        is_new = False
        applied: dict[str, Any] = {}
        for key, value in parsed.items():
            param = route.parameter(key)
            if param is not None and param.kind == "boolean" and _is_new_instance_marker(key):
                is_new = is_new or bool(value)
                continue
            applied[key] = value

        vm, previous = registry.activate(route, self.path_of(route.name))
        vm.apply(applied, is_new_instance=is_new)
        transition = GuiTransition(
            from_screen=previous,
            to_screen=route.name,
            applied=applied,
            new_instance=is_new,
            link=link.text(),
        )
        return ToolOutcome(ToolResult(vm.screen_text()), transition)


def _is_new_instance_marker(name: str) -> bool:
    return name.lower().startswith(NEW_INSTANCE_PREFIXES)


# Declarative route documents: {name, description, parameters, children} with
# parameters as {name, description, type, enum?}. Shared by demo apps, tests,
# and anything that wants to ship its navigation tree as data.

_ROUTE_KEYS = {"name", "description", "parameters", "children"}


def route_from_dict(doc: dict[str, Any], where: str = "route") -> DocumentedRoute:
    """Build a route (and its subtree) from its JSON document form.

    Validation errors carry the JSON path of the offending field.
    """
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - _ROUTE_KEYS
    if unknown:
        raise ConfigurationError(f"{where}: unknown fields {sorted(unknown)}")
    for required_field in ("name", "description"):
        if required_field not in doc:
            raise ConfigurationError(f"{where}: missing {required_field!r}")
    parameters = []
    for i, pdoc in enumerate(doc.get("parameters", [])):
        parameters.append(parameter_from_dict(pdoc, f"{where}.parameters[{i}]"))
    children = []
    for i, cdoc in enumerate(doc.get("children", [])):
        children.append(route_from_dict(cdoc, f"{where}.children[{i}]"))
    try:
        return DocumentedRoute(
            name=doc["name"],
            description=doc["description"],
            parameters=tuple(parameters),
            children=tuple(children),
        )
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def graph_from_dicts(docs: Sequence[dict[str, Any]], where: str = "routes") -> RouteGraph:
    routes = [route_from_dict(doc, f"{where}[{i}]") for i, doc in enumerate(docs)]
    return RouteGraph(routes)
