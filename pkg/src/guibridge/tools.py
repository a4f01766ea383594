"""Core vocabulary: tool descriptions, tool calls, and typed parameter values.

Everything the assistant side sees is built from these types: a tool is a
named capability with a typed parameter schema, a tool call is the model's
structured invocation of one, and a tool result is the text sent back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

PARAMETER_KINDS = ("string", "integer", "number", "boolean", "enum")

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")


class ConfigurationError(ValueError):
    """A tool, parameter, or route declaration violates its invariants."""


@dataclass(frozen=True)
class ParameterSpec:
    """One typed parameter of a tool or screen.

    ``enum_values`` must be non-empty exactly when ``kind`` is ``enum``.
    Parameters default to optional: screens accept partial fills, and the
    model is expected to omit anything the user did not say.
    """

    name: str
    description: str = ""
    kind: str = "string"
    enum_values: tuple[str, ...] = ()
    required: bool = False

    def __post_init__(self) -> None:
        if not _IDENTIFIER.match(self.name):
            raise ConfigurationError(f"parameter name {self.name!r} is not a valid identifier")
        if self.kind not in PARAMETER_KINDS:
            raise ConfigurationError(f"parameter {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == "enum" and not self.enum_values:
            raise ConfigurationError(f"enum parameter {self.name!r} needs enum_values")
        if self.kind != "enum" and self.enum_values:
            raise ConfigurationError(f"parameter {self.name!r}: enum_values only allowed for kind=enum")
        if not isinstance(self.enum_values, tuple):
            object.__setattr__(self, "enum_values", tuple(self.enum_values))

    def json_schema(self) -> dict[str, Any]:
        if self.kind == "enum":
            schema: dict[str, Any] = {"type": "string", "enum": list(self.enum_values)}
        else:
            schema = {"type": self.kind}
        if self.description:
            schema["description"] = self.description
        return schema


@dataclass(frozen=True)
class ToolSpec:
    """A callable capability description: name, description, parameter schema.

    ``input_schema`` overrides the generated JSON schema verbatim; it is used
    for tools whose wire shape cannot be expressed as a flat parameter list
    (the regex-command fallback tool has an array-typed parameter).
    """

    name: str
    description: str
    parameters: tuple[ParameterSpec, ...] = ()
    input_schema: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.parameters, tuple):
            object.__setattr__(self, "parameters", tuple(self.parameters))
        seen: set[str] = set()
        for p in self.parameters:
            if p.name in seen:
                raise ConfigurationError(f"tool {self.name!r}: duplicate parameter {p.name!r}")
            seen.add(p.name)

    def parameter(self, name: str) -> ParameterSpec | None:
        for p in self.parameters:
            if p.name == name:
                return p
        return None

    def json_schema(self) -> dict[str, Any]:
        """Parameter schema as a standard JSON-schema object."""
        if self.input_schema is not None:
            return self.input_schema
        properties = {p.name: p.json_schema() for p in self.parameters}
        schema: dict[str, Any] = {"type": "object", "properties": properties}
        required = [p.name for p in self.parameters if p.required]
        if required:
            schema["required"] = required
        return schema

    def as_function(self) -> dict[str, Any]:
        """Chat-completions style function declaration."""
        return {
            "type": "function",
            "function": {
                "name": self.name,
                "description": self.description,
                "parameters": self.json_schema(),
            },
        }

    def as_mcp(self) -> dict[str, Any]:
        """MCP wire shape for tools/list."""
        return {
            "name": self.name,
            "description": self.description,
            "inputSchema": self.json_schema(),
        }


@dataclass
class ToolCall:
    """The model-to-app request: a tool name plus argument values."""

    name: str
    arguments: dict[str, Any] = field(default_factory=dict)


@dataclass
class ToolResult:
    """The app-to-model response: a textual representation of the screen."""

    text: str
    is_error: bool = False


_PARAM_DOC_KEYS = {"name", "description", "type", "enum"}


def parameter_from_dict(doc: dict[str, Any], where: str = "parameter") -> ParameterSpec:
    """Parameter from its document form {name, description, type, enum?}.

    An ``enum`` field implies the enum kind; otherwise ``type`` is required.
    Errors carry the JSON path of the offending field.
    """
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - _PARAM_DOC_KEYS
    if unknown:
        raise ConfigurationError(f"{where}: unknown fields {sorted(unknown)}")
    if "name" not in doc:
        raise ConfigurationError(f"{where}: missing 'name'")
    if "enum" in doc:
        kind = "enum"
        enum_values = tuple(doc["enum"])
    elif "type" in doc:
        kind = doc["type"]
        enum_values = ()
    else:
        raise ConfigurationError(f"{where}: needs 'type' or 'enum'")
    try:
        return ParameterSpec(
            name=doc["name"],
            description=doc.get("description", ""),
            kind=kind,
            enum_values=enum_values,
        )
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def toolspec_from_dict(doc: dict[str, Any], where: str = "tool") -> ToolSpec:
    """ToolSpec from {name, description, parameters: [...]}."""
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected an object, got {type(doc).__name__}")
    for key in ("name", "description"):
        if key not in doc:
            raise ConfigurationError(f"{where}: missing {key!r}")
    parameters = tuple(
        parameter_from_dict(pdoc, f"{where}.parameters[{i}]")
        for i, pdoc in enumerate(doc.get("parameters", []))
    )
    return ToolSpec(doc["name"], doc["description"], parameters)


def render_value(value: Any) -> str:
    """String form of a typed value for deep links and screen text.

    Booleans render as ``true``/``false``, numbers in plain decimal with
    integral floats collapsed (50.0 renders as ``50``), everything else via
    ``str``.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value.is_integer():
            return str(int(value))
        return repr(value)
    return str(value)


def parse_value(text: str, spec: ParameterSpec) -> Any:
    """Parse a deep-link query string back into a typed value.

    Raises ValueError when the text does not parse under the parameter's
    declared kind (non-decimal integer, unknown enum member, ...).
    """
    if spec.kind == "integer":
        return int(text)
    if spec.kind == "number":
        try:
            return int(text)
        except ValueError:
            return float(text)
    if spec.kind == "boolean":
        lowered = text.lower()
        if lowered == "true":
            return True
        if lowered == "false":
            return False
        raise ValueError(f"not a boolean: {text!r}")
    if spec.kind == "enum":
        if text not in spec.enum_values:
            raise ValueError(f"{text!r} is not one of {list(spec.enum_values)}")
        return text
    return text
