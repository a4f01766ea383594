"""Per-parameter scoring of a model tool call against its ideal.

One response is scored over slots: the function name plus every parameter
present in either the ideal or the actual call. Each slot matches or
mismatches independently, and the response's accuracy is the matched
fraction. Averaging those per-response accuracies over a whole suite is
deliberately milder than all-or-nothing scoring: one wrong parameter on a
six-parameter screen should not void the response.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from ..tools import ToolCall

MATCHER_KINDS = ("exact", "enum_strict", "numeric_range")


@dataclass(frozen=True)
class Matcher:
    """How one parameter slot is compared.

    ``exact`` and ``enum_strict`` require strict, type-sensitive equality
    (an enum filled with the user's own wording is schema-violating and
    mismatches). ``numeric_range`` accepts any numeric value in [lo, hi],
    for parameters whose ideal value is a subjective estimate.
    """

    kind: str = "exact"
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in MATCHER_KINDS:
            raise ValueError(f"unknown matcher kind {self.kind!r}")
        if self.kind == "numeric_range" and (self.lo is None or self.hi is None):
            raise ValueError("numeric_range needs lo and hi")

    def passes(self, ideal: Any, actual: Any) -> bool:
        if self.kind == "numeric_range":
            if isinstance(actual, bool) or not isinstance(actual, (int, float)):
                return False
            return self.lo <= actual <= self.hi
        if isinstance(ideal, bool) != isinstance(actual, bool):
            return False
        if isinstance(ideal, str) != isinstance(actual, str):
            return False
        return ideal == actual


EXACT = Matcher("exact")


@dataclass(frozen=True)
class Mismatch:
    slot: str
    reason: str  # wrong_name | wrong_value | omitted | hallucinated | no_call
    ideal: Any = None
    actual: Any = None


def score_call(
    ideal: ToolCall,
    actual: ToolCall,
    matchers: Mapping[str, Matcher] | None = None,
) -> tuple[float, list[Mismatch]]:
    """Accuracy fraction plus the slots that missed.

    Slots are the function name plus the union of ideal and actual parameter
    keys, so an omitted parameter and a hallucinated one both count against
    the response. A wrong function name costs only the name slot; parameters
    are still compared by key.
    """
    matchers = matchers or {}
    mismatches: list[Mismatch] = []
    matched = 0

    if ideal.name == actual.name:
        matched += 1
    else:
        mismatches.append(Mismatch("function_name", "wrong_name", ideal.name, actual.name))

    keys = list(ideal.arguments)
    keys.extend(k for k in actual.arguments if k not in ideal.arguments)
    for key in keys:
        in_ideal = key in ideal.arguments
        in_actual = key in actual.arguments
        if in_ideal and in_actual:
            matcher = matchers.get(key, EXACT)
            if matcher.passes(ideal.arguments[key], actual.arguments[key]):
                matched += 1
            else:
                mismatches.append(
                    Mismatch(key, "wrong_value", ideal.arguments[key], actual.arguments[key])
                )
        elif in_ideal:
            mismatches.append(Mismatch(key, "omitted", ideal=ideal.arguments[key]))
        else:
            mismatches.append(Mismatch(key, "hallucinated", actual=actual.arguments[key]))

    slots = 1 + len(keys)
    return matched / slots, mismatches
