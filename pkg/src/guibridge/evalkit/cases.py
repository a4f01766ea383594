"""Evaluation cases and the line-delimited dataset format.

A dataset file holds one JSON object per line. An optional first line with
``"header": true`` carries the tool schemas and synonym tables shared by all
following cases; a case line holds id, language, utterance, the ideal tool
call, and per-parameter matchers. Cases may also carry their own ``tools``
inline, overriding the header.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from ..tools import ConfigurationError, ToolCall, ToolSpec, toolspec_from_dict
from .scoring import Matcher

LANGUAGES = ("en", "nl")


@dataclass
class EvalCase:
    """One transcribed user request with its ideal response."""

    id: str
    language: str
    utterance: str
    tools: list[ToolSpec]
    ideal: ToolCall
    matchers: dict[str, Matcher] = field(default_factory=dict)
    synonyms: dict[str, dict[str, list[str]]] = field(default_factory=dict)

    def tool(self, name: str) -> ToolSpec | None:
        for t in self.tools:
            if t.name == name:
                return t
        return None

    def validate(self) -> None:
        if self.language not in LANGUAGES:
            raise ConfigurationError(f"case {self.id}: unknown language {self.language!r}")
        tool = self.tool(self.ideal.name)
        if tool is None:
            raise ConfigurationError(
                f"case {self.id}: ideal call names unknown tool {self.ideal.name!r}"
            )
        for name, value in self.ideal.arguments.items():
            param = tool.parameter(name)
            if param is None:
                raise ConfigurationError(
                    f"case {self.id}: ideal argument {name!r} is not a parameter of {tool.name!r}"
                )
            if param.kind == "enum" and value not in param.enum_values:
                raise ConfigurationError(
                    f"case {self.id}: ideal {name!r}={value!r} is not an enum member"
                )
        for name, matcher in self.matchers.items():
            param = tool.parameter(name)
            if param is None:
                raise ConfigurationError(
                    f"case {self.id}: matcher for unknown parameter {name!r}"
                )
            if matcher.kind == "numeric_range" and param.kind not in ("number", "integer"):
                raise ConfigurationError(
                    f"case {self.id}: numeric_range matcher on non-numeric {name!r}"
                )


def matcher_from_doc(doc: Any, where: str) -> Matcher:
    if isinstance(doc, str):
        try:
            return Matcher(doc)
        except ValueError as exc:
            raise ConfigurationError(f"{where}: {exc}") from None
    if isinstance(doc, dict):
        try:
            return Matcher(doc.get("kind", "exact"), doc.get("lo"), doc.get("hi"))
        except ValueError as exc:
            raise ConfigurationError(f"{where}: {exc}") from None
    raise ConfigurationError(f"{where}: expected a matcher name or object")


def case_from_doc(
    doc: dict[str, Any],
    where: str,
    shared_tools: list[ToolSpec] | None,
    shared_synonyms: dict[str, dict[str, list[str]]] | None,
) -> EvalCase:
    for key in ("id", "language", "utterance", "ideal"):
        if key not in doc:
            raise ConfigurationError(f"{where}: missing {key!r}")
    if "tools" in doc:
        tools = [toolspec_from_dict(t, f"{where}.tools[{i}]") for i, t in enumerate(doc["tools"])]
    elif shared_tools is not None:
        tools = list(shared_tools)
    else:
        raise ConfigurationError(f"{where}: no tools inline and no header tools")
    ideal_doc = doc["ideal"]
    ideal = ToolCall(ideal_doc["name"], dict(ideal_doc.get("arguments", {})))
    matchers = {
        name: matcher_from_doc(m, f"{where}.matchers.{name}")
        for name, m in doc.get("matchers", {}).items()
    }
    case = EvalCase(
        id=doc["id"],
        language=doc["language"],
        utterance=doc["utterance"],
        tools=tools,
        ideal=ideal,
        matchers=matchers,
        synonyms=doc.get("synonyms", shared_synonyms or {}),
    )
    case.validate()
    return case


def load_dataset(path: str | Path) -> list[EvalCase]:
    """Read a line-delimited dataset file."""
    path = Path(path)
    cases: list[EvalCase] = []
    shared_tools: list[ToolSpec] | None = None
    shared_synonyms: dict[str, dict[str, list[str]]] | None = None
    seen_ids: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            where = f"{path.name}:{lineno}"
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"{where}: invalid JSON: {exc}") from None
            if doc.get("header"):
                shared_tools = [
                    toolspec_from_dict(t, f"{where}.tools[{i}]")
                    for i, t in enumerate(doc.get("tools", []))
                ]
                shared_synonyms = doc.get("synonyms", {})
                continue
            case = case_from_doc(doc, where, shared_tools, shared_synonyms)
            if case.id in seen_ids:
                raise ConfigurationError(f"{where}: duplicate case id {case.id!r}")
            seen_ids.add(case.id)
            cases.append(case)
    if not cases:
        raise ConfigurationError(f"{path}: no cases found")
    return cases


def dump_case(case: EvalCase, include_tools: bool = False) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "id": case.id,
        "language": case.language,
        "utterance": case.utterance,
        "ideal": {"name": case.ideal.name, "arguments": case.ideal.arguments},
    }
    if case.matchers:
        doc["matchers"] = {
            name: (m.kind if m.kind != "numeric_range" else {"kind": m.kind, "lo": m.lo, "hi": m.hi})
            for name, m in case.matchers.items()
        }
    if include_tools:
        doc["tools"] = [
            {
                "name": t.name,
                "description": t.description,
                "parameters": [
                    (
                        {"name": p.name, "description": p.description, "enum": list(p.enum_values)}
                        if p.kind == "enum"
                        else {"name": p.name, "description": p.description, "type": p.kind}
                    )
                    for p in t.parameters
                ],
            }
            for t in case.tools
        ]
    return doc


def filter_language(cases: Iterable[EvalCase], language: str) -> list[EvalCase]:
    return [c for c in cases if c.language == language]
