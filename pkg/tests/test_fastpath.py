import re

import pytest

from guibridge.fastpath import (
    MATCHER_TOOL_NAME,
    CommandMatch,
    CommandPattern,
    as_tool,
    match_user_input,
    patterns_from_config,
)
from guibridge.tools import ConfigurationError

BACK = CommandPattern(r"(\b\w+\s+)?[bB]ack", "back")
FORWARD = CommandPattern(r"(\b\w+\s+)?[fF]orward", "forward")
PATTERNS = [BACK, FORWARD]


@pytest.mark.parametrize("utterance", ["go back", "click back", "navigate back", "back", "Back"])
def test_back_trigger_phrases(utterance):
    assert match_user_input(utterance, PATTERNS) == CommandMatch("back", utterance)


def test_empty_input_no_match():
    assert match_user_input("", PATTERNS) is None
    assert match_user_input("   ", PATTERNS) is None


def test_backpack_rejected_by_anchoring():
    # the unanchored pattern would find a substring; full-string matching rejects it
    assert re.search(BACK.pattern, "backpack") is not None
    assert match_user_input("backpack", PATTERNS) is None


def test_whitespace_trimmed_before_matching():
    assert match_user_input("  go back \n", PATTERNS) == CommandMatch("back", "go back")


def test_first_pattern_in_list_order_wins():
    ambiguous = [
        CommandPattern(r"go .*", "generic"),
        CommandPattern(r"(\b\w+\s+)?[bB]ack", "back"),
    ]
    assert match_user_input("go back", ambiguous).command_id == "generic"


def test_forward_pattern():
    assert match_user_input("move Forward", PATTERNS).command_id == "forward"


def test_invalid_pattern_rejected_at_registration():
    with pytest.raises(ConfigurationError):
        CommandPattern(r"(unclosed", "broken")


def test_as_tool_shape():
    spec = as_tool(PATTERNS)
    assert spec.name == MATCHER_TOOL_NAME
    assert spec.description == (
        "Check user input against specified regular expressions and return matched input."
    )
    schema = spec.json_schema()
    assert schema["required"] == ["user_input", "regexps"]
    assert schema["properties"]["user_input"] == {"type": "string"}
    items = schema["properties"]["regexps"]["items"]
    assert items["enum"] == ["(\\b\\w+\\s+)?[bB]ack", "(\\b\\w+\\s+)?[fF]orward"]


def test_as_tool_omitted_without_patterns():
    assert as_tool([]) is None


def test_patterns_from_config():
    docs = [{"pattern": "[sS]top", "command": "stop", "description": "Halt"}]
    (pattern,) = patterns_from_config(docs)
    assert pattern.command_id == "stop"
    with pytest.raises(ConfigurationError):
        patterns_from_config([{"pattern": "x"}])


def test_tool_route_equivalent_to_direct_match(banking_session):
    """The model-invoked matcher tool lands on the same command as the
    direct post-transcription interception."""
    session = banking_session
    session.navigate("app://transfer")
    for utterance in ["navigate back", "go forward", "Back"]:
        direct = session.match_command(utterance)
        tools = {t.spec.name: t for t in session.composed_tools()}
        outcome = tools[MATCHER_TOOL_NAME].handler(
            {"user_input": utterance, "regexps": [p.pattern for p in session.patterns]}
        )
        assert outcome.detail == direct
        assert direct is not None


def test_tool_route_no_match_reports_nothing(banking_session):
    tools = {t.spec.name: t for t in banking_session.composed_tools()}
    outcome = tools[MATCHER_TOOL_NAME].handler({"user_input": "backpack", "regexps": []})
    assert outcome.detail is None
    assert outcome.transition is None
