import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from guibridge.sap import (
    RepairLog,
    SynonymTable,
    levenshtein,
    repair_call,
)
from guibridge.tools import ConfigurationError, ParameterSpec, ToolCall, ToolSpec


def reference_distance(a, b):
    """Full-matrix dynamic-programming table, kept independent of the
    two-row implementation under test."""
    a, b = a.casefold(), b.casefold()
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        table[i][0] = i
    for j in range(cols):
        table[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            table[i][j] = min(
                table[i - 1][j] + 1,
                table[i][j - 1] + 1,
                table[i - 1][j - 1] + cost,
            )
    return table[-1][-1]


# -- levenshtein ---------------------------------------------------------------


def test_identity_distance_zero():
    assert levenshtein("battery", "battery") == 0


def test_single_deletion():
    assert reference_distance("battery", "batery") == 1
    assert levenshtein("battery", "batery") == 1


def test_empty_versus_word_counts_insertions():
    assert levenshtein("", "abc") == 3


@pytest.mark.parametrize(
    "a,b",
    [
        ("replace", "replac"),
        ("cancel", "cancelled"),
        ("power cell", "battery"),
        ("kitten", "sitting"),
        ("", ""),
    ],
)
def test_matches_reference_table(a, b):
    assert levenshtein(a, b) == reference_distance(a, b)


words = st.text(alphabet=st.characters(min_codepoint=97, max_codepoint=122), max_size=12)


@settings(max_examples=500, deadline=None)
@given(a=words, b=words, c=words)
def test_metric_axioms(a, b, c):
    assert levenshtein(a, b) == levenshtein(b, a)
    assert (levenshtein(a, b) == 0) == (a == b)
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


@settings(max_examples=200, deadline=None)
@given(a=words, b=words)
def test_agrees_with_reference_on_random_strings(a, b):
    assert levenshtein(a, b) == reference_distance(a, b)


# -- repair_call ----------------------------------------------------------------


MATERIAL = ParameterSpec(
    "fire_material_type", "Material that is burning", "enum",
    ("battery", "cable", "server_rack"),
)
ACTION = ParameterSpec("action", "Action on the card", "enum", ("replace", "cancel"))
SCHEMA = ToolSpec(
    "record_incident",
    "Record an incident",
    (
        ParameterSpec("fire_height_m", "Height of the fire in meters", "number"),
        MATERIAL,
        ParameterSpec("location", "Where it happened", "string"),
        ParameterSpec("limit", "New limit", "integer"),
        ACTION,
        ParameterSpec("smoke", "Smoke visible", "boolean"),
    ),
)
SYNONYMS = SynonymTable({"battery": ["power cell", "power pack"]})


def repair(args, synonyms=SYNONYMS):
    return repair_call(ToolCall("record_incident", args), SCHEMA, synonyms)


def test_synonym_repair():
    call, log = repair({"fire_material_type": "power cell"})
    assert call.arguments["fire_material_type"] == "battery"
    assert [e.rule for e in log.entries] == ["enum_synonym"]


def test_quoted_integer_coerced():
    call, log = repair({"limit": "9000"})
    assert call.arguments["limit"] == 9000
    assert [e.rule for e in log.entries] == ["number_coercion"]


def test_bare_number_for_string_parameter_becomes_text():
    call, log = repair({"location": 12})
    assert call.arguments["location"] == "12"
    assert [e.rule for e in log.entries] == ["number_coercion"]


def test_article_strip():
    call, log = repair({"action": "the replace"})
    assert call.arguments["action"] == "replace"
    assert [e.rule for e in log.entries] == ["enum_article"]


def test_levenshtein_repair_within_threshold():
    # distance 1 and the member's threshold is max(1, 7//4) = 1
    assert reference_distance("replac", "replace") == 1
    call, log = repair({"action": "replac"})
    assert call.arguments["action"] == "replace"
    assert [e.rule for e in log.entries] == ["enum_levenshtein"]


def test_case_and_plural_fold():
    call, log = repair({"fire_material_type": "Batteries"})
    assert call.arguments["fire_material_type"] == "battery"
    assert [e.rule for e in log.entries] == ["enum_plural"]


def test_case_fold_alone():
    call, log = repair({"action": "Replace"})
    assert call.arguments["action"] == "replace"
    assert [e.rule for e in log.entries] == ["enum_exact_case"]


def test_null_values_dropped():
    call, log = repair({"location": None, "action": "null"})
    assert call.arguments == {}
    assert sorted(e.rule for e in log.entries) == ["null_drop", "null_drop"]


def test_unrepairable_enum_flagged_not_guessed():
    call, log = repair({"fire_material_type": "lava lamp"})
    assert call.arguments["fire_material_type"] == "lava lamp"
    assert log.flagged == ["fire_material_type"]


def test_levenshtein_tie_unrepairable():
    schema = ToolSpec("t", "d", (ParameterSpec("p", kind="enum", enum_values=("cat", "car")),))
    call, log = repair_call(ToolCall("t", {"p": "caw"}), schema, None)
    assert log.flagged == ["p"]
    assert call.arguments["p"] == "caw"


def test_untouched_parameters_pass_through():
    args = {"location": "rack 12", "smoke": True, "fire_height_m": 1.0}
    call, log = repair(args)
    assert call.arguments == args
    assert not log.entries


def test_unknown_parameter_passes_through():
    call, log = repair({"ghost": "value"})
    assert call.arguments == {"ghost": "value"}
    assert not log.entries


def test_uncoercible_number_flagged():
    call, log = repair({"fire_height_m": "halfway up the rack"})
    assert log.flagged == ["fire_height_m"]


def test_synonym_table_rejects_ambiguous_phrase():
    with pytest.raises(ConfigurationError):
        SynonymTable({"battery": ["cell"], "cable": ["cell"]})


# -- properties -------------------------------------------------------------------


enum_noise = st.one_of(
    st.sampled_from(
        [
            "battery", "Battery", "batteries", "the battery", "a cable", "power cell",
            "Power Pack", "server_rack", "server racks", "batery", "cabel", "replce",
            "lava lamp", "null", "", "the", "rack",
        ]
    ),
    words,
)
value_pool = st.one_of(
    st.integers(min_value=-999, max_value=9999),
    st.floats(allow_nan=False, allow_infinity=False, width=32),
    st.booleans(),
    st.none(),
    enum_noise,
    st.sampled_from(["9000", "1.5", "-3", "true"]),
)
random_calls = st.dictionaries(
    st.sampled_from([p.name for p in SCHEMA.parameters] + ["ghost"]),
    value_pool,
    max_size=6,
).map(lambda args: ToolCall("record_incident", args))


@settings(max_examples=1000, deadline=None)
@given(call=random_calls)
def test_repair_is_idempotent(call):
    once, _ = repair_call(call, SCHEMA, SYNONYMS)
    twice, _ = repair_call(once, SCHEMA, SYNONYMS)
    assert twice.arguments == once.arguments
    assert twice.name == once.name


@settings(max_examples=1000, deadline=None)
@given(call=random_calls)
def test_repaired_unflagged_parameters_conform_to_schema(call):
    repaired, log = repair_call(call, SCHEMA, SYNONYMS)
    flagged = set(log.flagged)
    for name, value in repaired.arguments.items():
        param = SCHEMA.parameter(name)
        if param is None or name in flagged:
            continue
        if param.kind == "enum":
            assert value in param.enum_values
        elif param.kind == "integer":
            assert isinstance(value, int) and not isinstance(value, bool)
        elif param.kind == "number":
            assert isinstance(value, (int, float)) and not isinstance(value, bool)


@settings(max_examples=1000, deadline=None)
@given(call=random_calls)
def test_repair_never_invents_parameters(call):
    repaired, _ = repair_call(call, SCHEMA, SYNONYMS)
    assert set(repaired.arguments) <= set(call.arguments)
