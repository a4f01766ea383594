"""Schema-aligned repair of model tool calls.

Models deviate from tool schemas in predictable ways: numbers wrapped in
quotes, parameters set to null, enum values replaced by the user's own
wording. With the schema in hand, most of these are mechanically fixable.
The enum pipeline runs most-certain rules first (exact, case fold, article
strip, synonyms, plural fold, edit distance) so repair logs stay
deterministic; anything it cannot fix is flagged, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .tools import ConfigurationError, ToolCall, ToolSpec, render_value

ARTICLES = ("a", "an", "the")

RULES = (
    "number_coercion",
    "null_drop",
    "enum_exact_case",
    "enum_article",
    "enum_synonym",
    "enum_plural",
    "enum_levenshtein",
)


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance (insert/delete/substitute) on case-folded input."""
    a, b = a.casefold(), b.casefold()
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def _singularize(word: str) -> str:
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith(("ses", "xes", "zes", "ches", "shes")):
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


def _strip_articles(text: str) -> str:
    words = text.split()
    while words and words[0] in ARTICLES:
        words = words[1:]
    return " ".join(words)


class SynonymTable:
    """Maps enum members to the phrases users actually say for them.

    Phrases are stored case-folded; a phrase may not point at two different
    members of the same enum.
    """

    def __init__(self, mapping: Mapping[str, Iterable[str]] | None = None):
        self.mapping: dict[str, list[str]] = {}
        self._by_phrase: dict[str, str] = {}
        for member, phrases in (mapping or {}).items():
            self.add(member, phrases)

    def add(self, member: str, phrases: Iterable[str]) -> None:
        bucket = self.mapping.setdefault(member, [])
        for phrase in phrases:
            folded = phrase.casefold()
            existing = self._by_phrase.get(folded)
            if existing is not None and existing != member:
                raise ConfigurationError(
                    f"synonym {phrase!r} maps to both {existing!r} and {member!r}"
                )
            self._by_phrase[folded] = member
            bucket.append(folded)

    def member_for(self, phrase: str) -> str | None:
        return self._by_phrase.get(phrase.casefold())

    def phrases(self) -> dict[str, str]:
        """phrase -> member, case-folded."""
        return dict(self._by_phrase)

    def __bool__(self) -> bool:
        return bool(self._by_phrase)


@dataclass(frozen=True)
class RepairEntry:
    parameter: str
    original: Any
    repaired: Any
    rule: str


@dataclass
class RepairLog:
    """One entry per changed parameter; unrepairable ones carry rule "none"."""

    entries: list[RepairEntry] = field(default_factory=list)

    @property
    def flagged(self) -> list[str]:
        return [e.parameter for e in self.entries if e.rule == "none"]

    @property
    def repaired(self) -> list[RepairEntry]:
        return [e for e in self.entries if e.rule != "none"]

    def __bool__(self) -> bool:
        return bool(self.entries)


def repair_call(
    call: ToolCall,
    schema: ToolSpec,
    synonyms: SynonymTable | None = None,
) -> tuple[ToolCall, RepairLog]:
    """Repair a tool call against its schema; untouched values pass through.

    Per parameter: quoted numbers are unquoted (and bare numbers quoted where
    the schema wants text), null-valued parameters are dropped, and enum
    deviations run through the coercion pipeline. Repair never invents a
    parameter that was not in the call; values it cannot fix are returned
    as-is and flagged so the caller can surface a parameter-level error.
    """
    log = RepairLog()
    arguments: dict[str, Any] = {}
    for name, value in call.arguments.items():
        param = schema.parameter(name)
        if param is None:
            arguments[name] = value
            continue

        if value is None or (isinstance(value, str) and value.strip().casefold() == "null"):
            log.entries.append(RepairEntry(name, value, None, "null_drop"))
            continue

        if param.kind in ("integer", "number"):
            repaired, ok = _coerce_numeric(value, param.kind)
            if ok:
                if type(repaired) is not type(value):
                    log.entries.append(RepairEntry(name, value, repaired, "number_coercion"))
                arguments[name] = repaired
            else:
                log.entries.append(RepairEntry(name, value, value, "none"))
                arguments[name] = value
            continue

        if param.kind == "string" and isinstance(value, (int, float)) and not isinstance(value, bool):
            text = render_value(value)
            log.entries.append(RepairEntry(name, value, text, "number_coercion"))
            arguments[name] = text
            continue

        if param.kind == "enum":
            if value in param.enum_values:
                arguments[name] = value
                continue
            outcome = _repair_enum(str(value), param.enum_values, synonyms)
            if outcome is None:
                log.entries.append(RepairEntry(name, value, value, "none"))
                arguments[name] = value
            else:
                member, rule = outcome
                log.entries.append(RepairEntry(name, value, member, rule))
                arguments[name] = member
            continue

        arguments[name] = value

    return ToolCall(call.name, arguments), log


def _coerce_numeric(value: Any, kind: str) -> tuple[Any, bool]:
    if isinstance(value, bool):
        return value, False
    if isinstance(value, int):
        return value, True
    if isinstance(value, float):
        if kind == "integer":
            if value.is_integer():
                return int(value), True
            return value, False
        return value, True
    if isinstance(value, str):
        text = value.strip()
        try:
            return int(text), True
        except ValueError:
            pass
        if kind == "number":
            try:
                return float(text), True
            except ValueError:
                pass
        return value, False
    return value, False


def _repair_enum(
    value: str, members: Sequence[str], synonyms: SynonymTable | None
) -> tuple[str, str] | None:
    by_fold = {m.casefold(): m for m in members}
    folded = value.strip().casefold()

    if folded in by_fold:
        return by_fold[folded], "enum_exact_case"

    stripped = _strip_articles(folded)
    if stripped != folded and stripped in by_fold:
        return by_fold[stripped], "enum_article"

    if synonyms:
        member = synonyms.member_for(stripped)
        if member is not None and member in members:
            return member, "enum_synonym"

    singular = _singularize(stripped)
    if singular != stripped:
        if singular in by_fold:
            return by_fold[singular], "enum_plural"
        if synonyms:
            member = synonyms.member_for(singular)
            if member is not None and member in members:
                return member, "enum_plural"
    for fold, member in by_fold.items():
        if stripped == _singularize(fold) and stripped != fold:
            return member, "enum_plural"

    within = [
        member
        for fold, member in by_fold.items()
        if levenshtein(stripped, fold) <= max(1, len(fold) // 4)
    ]
    if len(within) == 1:
        return within[0], "enum_levenshtein"
    return None


def synonyms_from_config(doc: Mapping[str, Mapping[str, Iterable[str]]]) -> dict[str, SynonymTable]:
    """Per-tool synonym tables from the app config's ``synonyms`` section."""
    return {tool: SynonymTable(table) for tool, table in doc.items()}
