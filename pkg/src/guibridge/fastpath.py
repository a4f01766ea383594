"""Regex command matching that bypasses the model for short utterances.

Commands like "go back" follow simple patterns and do not need a language
model; they trigger directly on the transcript. The matcher is also
expressible as a regular tool so assistants that do not special-case it can
still reach the same behavior, just via the slower route.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .tools import ConfigurationError, ToolSpec

MATCHER_TOOL_NAME = "match_user_input"


@dataclass(frozen=True)
class CommandPattern:
    """A full-string regular expression mapped to a command.

    The pattern text may be unanchored; matching is anchored over the whole
    trimmed input, so "backpack" does not trigger a back command.
    """

    pattern: str
    command_id: str
    description: str = ""

    def __post_init__(self) -> None:
        try:
            compiled = re.compile(self.pattern)
        except re.error as exc:
            raise ConfigurationError(f"command {self.command_id!r}: bad pattern: {exc}") from None
        object.__setattr__(self, "_compiled", compiled)

    @property
    def regex(self) -> re.Pattern[str]:
        return self._compiled  # type: ignore[attr-defined]


@dataclass(frozen=True)
class CommandMatch:
    command_id: str
    matched_text: str


def match_user_input(text: str, patterns: Sequence[CommandPattern]) -> CommandMatch | None:
    """First pattern (in list order) that fully matches the trimmed input wins.

    Matching runs on the original-case transcript; case variance belongs in
    the patterns themselves ("[bB]ack"). No match returns None and the caller
    proceeds to the model.
    """
    trimmed = text.strip()
    if not trimmed:
        return None
    for pattern in patterns:
        if pattern.regex.fullmatch(trimmed):
            return CommandMatch(pattern.command_id, trimmed)
    return None


def as_tool(patterns: Sequence[CommandPattern]) -> ToolSpec | None:
    """The matcher encoded as a plain tool, for assistants without a bypass.

    The tool takes the raw user input plus the registered pattern list as an
    enum, so a cooperating client can run the match before ever calling the
    model. With no patterns registered there is nothing to match and no tool
    is emitted.
    """
    if not patterns:
        return None
    return ToolSpec(
        name=MATCHER_TOOL_NAME,
        description="Check user input against specified regular expressions and return matched input.",
        input_schema={
            "type": "object",
            "properties": {
                "user_input": {"type": "string"},
                "regexps": {
                    "type": "array",
                    "description": "regular expressions for matching.",
                    "items": {"type": "string", "enum": [p.pattern for p in patterns]},
                },
            },
            "required": ["user_input", "regexps"],
        },
    )


def patterns_from_config(docs: Sequence[dict], where: str = "commands") -> list[CommandPattern]:
    out = []
    for i, doc in enumerate(docs):
        for key in ("pattern", "command"):
            if key not in doc:
                raise ConfigurationError(f"{where}[{i}]: missing {key!r}")
        out.append(
            CommandPattern(doc["pattern"], doc["command"], doc.get("description", ""))
        )
    return out
