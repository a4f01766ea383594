import json

import pytest

from guibridge.assistant import (
    Assistant,
    CLEAR_ON_SCREEN_CHANGE,
    ConversationEntry,
    EmbeddedBackend,
    HistoryPolicy,
    KEEP_ALL,
    ModelTransportError,
    PromptBundle,
    ScriptedModelClient,
    first_tool_call,
    keep_last_n,
    scripted_response,
)
from guibridge.demo import build_demo_graph, load_demo_config
from guibridge.session import GuiSession
from guibridge.tools import ToolCall


def make_assistant(script, config=None, **kwargs):
    session = GuiSession(config or load_demo_config("banking"))
    client = ScriptedModelClient(script)
    assistant = Assistant(EmbeddedBackend(session), client, **kwargs)
    return assistant, session, client


# -- fastpath bypass -----------------------------------------------------------


def test_go_back_bypasses_the_model():
    assistant, session, client = make_assistant([])
    session.navigate("app://transfer")
    turn = assistant.handle_utterance("go back")
    assert turn.fastpath
    assert turn.model_calls == 0
    assert client.request_count == 0
    assert session.active_screen == "accounts"


def test_backpack_reaches_the_model_path():
    assistant, session, client = make_assistant([{"text": "no idea what a backpack is"}])
    turn = assistant.handle_utterance("backpack")
    assert not turn.fastpath
    assert turn.model_calls == 1
    assert turn.assistant_text == "no idea what a backpack is"
    assert session.active_screen == "accounts"


def test_fastpath_can_be_disabled():
    assistant, _session, client = make_assistant([{"text": "ok"}], fastpath=False)
    turn = assistant.handle_utterance("go back")
    assert not turn.fastpath
    assert client.request_count == 1


# -- tool-call routing ------------------------------------------------------------


def test_scripted_navigation_fills_parameters():
    assistant, session, _ = make_assistant(
        [{"tool_call": {"name": "creditcard", "arguments": {"limit": 9000}}}]
    )
    turn = assistant.handle_utterance("set my card limit to nine thousand")
    assert session.active_screen == "creditcard"
    assert session.registry.active.context.parameter_values == {"limit": 9000}
    assert "limit: 9000" in turn.result_text


def test_amount_correction_on_transfer_screen():
    assistant, session, _ = make_assistant(
        [
            {"tool_call": {"name": "transfer", "arguments": {"destination": "Robert", "amount": 30}}},
            {"tool_call": {"name": "transfer", "arguments": {"amount": 40}}},
        ]
    )
    assistant.handle_utterance("transfer 30 euros to Robert")
    turn = assistant.handle_utterance("raise the amount to 40")
    values = session.registry.active.context.parameter_values
    assert values == {"destination": "Robert", "amount": 40}
    assert turn.feedback.speech_text == "Set amount to 40"
    assert turn.feedback.highlight_targets == ["field:amount"]


def test_repair_flow_correction_then_new_instance():
    assistant, session, _ = make_assistant(
        [
            {"tool_call": {"name": "transfer", "arguments": {"destination": "Robert", "amount": 50}}},
            {"tool_call": {"name": "transfer", "arguments": {"amount": 40}}},
            {"tool_call": {"name": "transfer", "arguments": {
                "isNewTransfer": True, "destination": "Mary", "amount": 50}}},
        ]
    )
    assistant.handle_utterance("Transfer 50 euros to Robert")
    assistant.handle_utterance("No 40")
    state = session.registry.active.context.parameter_values
    assert state == {"destination": "Robert", "amount": 40}

    assistant.handle_utterance("Also transfer 50 to Mary")
    state = session.registry.active.context.parameter_values
    assert state == {"destination": "Mary", "amount": 50}


def test_enum_deviation_repaired_before_dispatch():
    assistant, session, _ = make_assistant(
        [{"tool_call": {"name": "record_incident", "arguments": {
            "fire_material_type": "power cell", "location": "rack 3"}}}],
        config=build_demo_graph(),
    )
    turn = assistant.handle_utterance("a power cell is burning at rack 3")
    assert session.registry.active.context.parameter_values["fire_material_type"] == "battery"
    assert turn.repair_log is not None
    assert [e.rule for e in turn.repair_log.entries] == ["enum_synonym"]


def test_unrepairable_parameter_is_surfaced_not_crashed():
    assistant, session, _ = make_assistant(
        [{"tool_call": {"name": "creditcard", "arguments": {"action": "shred it"}}}]
    )
    before = session.state_snapshot()
    turn = assistant.handle_utterance("shred the card")
    assert turn.error is not None and "action" in turn.error
    assert session.state_snapshot() == before


def test_model_transport_failure_leaves_gui_untouched():
    assistant, session, _ = make_assistant([{"error": "connection refused"}])
    before = session.state_snapshot()
    turn = assistant.handle_utterance("do something")
    assert turn.error == "connection refused"
    assert session.state_snapshot() == before
    assert assistant.history[-1].kind == "assistant_text"


# -- history policies ----------------------------------------------------------------


def seed_history(assistant, n=4):
    for i in range(n):
        assistant._append("user_text", f"utterance {i}")


def test_clear_on_screen_change():
    assistant, _, _ = make_assistant([], history_policy=CLEAR_ON_SCREEN_CHANGE)
    seed_history(assistant, 4)
    history = assistant.on_gui_transition("transfer")
    assert len(history) == 1
    assert history[0].kind == "gui_transition"
    assert history[0].payload == "transfer"


def test_keep_all_appends_marker():
    assistant, _, _ = make_assistant([], history_policy=KEEP_ALL)
    seed_history(assistant, 4)
    history = assistant.on_gui_transition("transfer")
    assert len(history) == 5
    assert history[-1].kind == "gui_transition"


def test_keep_last_n_trims_then_appends():
    assistant, _, _ = make_assistant([], history_policy=keep_last_n(2))
    seed_history(assistant, 5)
    history = assistant.on_gui_transition("transfer")
    assert len(history) == 3
    assert [e.kind for e in history] == ["user_text", "user_text", "gui_transition"]
    assert history[0].payload == "utterance 3"


def test_policy_parse():
    assert HistoryPolicy.parse("keep_all") == KEEP_ALL
    assert HistoryPolicy.parse("keep_last_3") == keep_last_n(3)
    with pytest.raises(ValueError):
        HistoryPolicy.parse("forget_everything")


def test_navigation_turn_appends_transition_marker():
    assistant, _, _ = make_assistant(
        [{"tool_call": {"name": "transfer", "arguments": {}}}]
    )
    assistant.handle_utterance("open transfers")
    kinds = [e.kind for e in assistant.history]
    assert kinds == ["user_text", "tool_call", "tool_result", "gui_transition"]


def test_same_screen_edit_does_not_add_marker():
    assistant, _, _ = make_assistant(
        [
            {"tool_call": {"name": "transfer", "arguments": {}}},
            {"tool_call": {"name": "transfer", "arguments": {"amount": 10}}},
        ]
    )
    assistant.handle_utterance("open transfers")
    length_after_nav = len(assistant.history)
    assistant.handle_utterance("ten euros")
    kinds = [e.kind for e in assistant.history[length_after_nav:]]
    assert kinds == ["user_text", "tool_call", "tool_result"]


# -- two-phase tool calling --------------------------------------------------------------


def test_two_phase_makes_exactly_two_model_calls():
    assistant, session, client = make_assistant(
        [
            {"text": "transfer"},
            {"tool_call": {"name": "transfer", "arguments": {"amount": 50}}},
        ],
        two_phase=True,
    )
    turn = assistant.handle_utterance("wire fifty euros")
    assert turn.model_calls == 2
    assert turn.tool_call == ToolCall("transfer", {"amount": 50})
    assert session.active_screen == "transfer"


def test_two_phase_single_tool_skips_selection():
    single = {
        "routes": [
            {"name": "only", "description": "The only screen", "parameters": [
                {"name": "note", "description": "Note", "type": "string"}]}
        ]
    }
    from guibridge.session import load_app_config

    session = GuiSession(load_app_config(single))
    client = ScriptedModelClient(
        [{"tool_call": {"name": "only", "arguments": {"note": "hi"}}}]
    )
    assistant = Assistant(EmbeddedBackend(session), client, two_phase=True)
    turn = assistant.handle_utterance("write hi")
    assert turn.model_calls == 1
    assert turn.tool_call.name == "only"


def test_two_phase_retries_once_then_errors():
    assistant, session, client = make_assistant(
        [{"text": "frobnicate"}, {"text": "blorp"}],
        two_phase=True,
    )
    before = session.state_snapshot()
    turn = assistant.handle_utterance("do the thing")
    assert turn.error is not None
    assert client.request_count == 2
    assert session.state_snapshot() == before


def test_two_phase_retry_recovers():
    assistant, _, client = make_assistant(
        [
            {"text": "teleport"},
            {"text": "creditcard"},
            {"tool_call": {"name": "creditcard", "arguments": {"limit": 1}}},
        ],
        two_phase=True,
    )
    turn = assistant.handle_utterance("card please")
    assert turn.tool_call.name == "creditcard"
    assert client.request_count == 3


# -- verbalize ----------------------------------------------------------------------------


def test_verbalize_navigation_phrase():
    assistant, _, _ = make_assistant([])
    assert assistant.verbalize(ToolCall("offices-map")) == "Showing offices on the map"


def test_verbalize_parameter_edit():
    assistant, session, _ = make_assistant([])
    session.navigate("app://transfer")
    assert assistant.verbalize(ToolCall("transfer", {"amount": 40})) == "Set amount to 40"


def test_verbalize_reentry_uses_description():
    assistant, session, _ = make_assistant([])
    text = assistant.verbalize(ToolCall("accounts"))
    assert text == "Showing Overview of your accounts and balances"


# -- prompt assembly ------------------------------------------------------------------------


def test_prompt_bundle_orders_tools_like_compose(banking_session):
    assistant = Assistant(EmbeddedBackend(banking_session), ScriptedModelClient([]))
    banking_session.navigate("app://creditcard")
    bundle = assistant.assemble_prompt()
    assert bundle.tools[0].name == "creditcard"
    assert bundle.screen_parameters["screen_id"] == "creditcard"


def test_prompt_messages_render_history():
    bundle = PromptBundle(
        system_prompt="SYSTEM",
        history=[
            ConversationEntry("user_text", "hello"),
            ConversationEntry("tool_call", {"id": "call_1", "call": ToolCall("t", {"a": 1})}),
            ConversationEntry("tool_result", {"id": "call_1", "text": "Screen"}),
            ConversationEntry("gui_transition", "transfer"),
        ],
        tools=[],
        screen_parameters={"screen_id": "transfer"},
    )
    messages = bundle.messages()
    assert messages[0]["role"] == "system"
    assert "SYSTEM" in messages[0]["content"]
    assert messages[1] == {"role": "user", "content": "hello"}
    assert messages[2]["tool_calls"][0]["function"]["name"] == "t"
    assert messages[3]["role"] == "tool"
    assert "transfer" in messages[4]["content"]


def test_first_tool_call_parses_string_arguments():
    response = scripted_response({"tool_call": {"name": "t", "arguments": {"a": 1}}})
    call = first_tool_call(response)
    assert call == ToolCall("t", {"a": 1})
    assert first_tool_call({"choices": [{"message": {"content": "hi"}}]}) is None


# -- determinism ------------------------------------------------------------------------------


def test_turns_are_reproducible_with_scripted_client():
    script = [
        {"tool_call": {"name": "transfer", "arguments": {"destination": "Robert", "amount": 50}}},
        {"tool_call": {"name": "transfer", "arguments": {"amount": 40}}},
    ]

    def run():
        assistant, session, _ = make_assistant(list(script))
        turns = [
            assistant.handle_utterance("Transfer 50 euros to Robert"),
            assistant.handle_utterance("No 40"),
        ]
        record = [
            (t.tool_call, t.result_text, t.feedback.speech_text, t.fastpath, t.error)
            for t in turns
        ]
        history = [(e.kind, str(e.payload)) for e in assistant.history]
        return record, history, session.state_snapshot()

    assert run() == run()


# -- config-driven construction ------------------------------------------------


def test_build_assistant_embedded_from_config():
    from guibridge.assistant import build_assistant
    from guibridge.demo import load_demo_config

    session = GuiSession(load_demo_config("banking"))
    client = ScriptedModelClient([])
    assistant = build_assistant(
        {
            "mode": "embedded",
            "history_policy": "clear_on_screen_change",
            "two_phase": True,
            "fastpath": False,
            "language": "nl",
        },
        session=session,
        client=client,
    )
    assert assistant.history_policy == CLEAR_ON_SCREEN_CHANGE
    assert assistant.two_phase_enabled and not assistant.fastpath_enabled
    assert assistant.system_prompt.startswith("Je bent een bekwame vertaler")


def test_build_assistant_mcp_mode_from_config():
    from guibridge.assistant import build_assistant
    from guibridge.demo import load_demo_config
    from guibridge.mcp import McpServer, in_process_transport

    server = McpServer(GuiSession(load_demo_config("banking")))
    assistant = build_assistant(
        {"mode": "mcp", "history_policy": "keep_last_2"},
        transport=in_process_transport(server),
        client=ScriptedModelClient(
            [{"tool_call": {"name": "creditcard", "arguments": {"limit": 5}}}]
        ),
    )
    turn = assistant.handle_utterance("limit to five")
    assert "limit: 5" in turn.result_text
    assert server.session.active_screen == "creditcard"


def test_build_assistant_validates_config():
    from guibridge.assistant import build_assistant

    with pytest.raises(ValueError):
        build_assistant({"mode": "embedded"})  # no session
    with pytest.raises(ValueError):
        build_assistant({"mode": "mcp"})  # no transport
    with pytest.raises(ValueError):
        build_assistant({"mode": "telepathy"})


# -- HTTP model client wire format -----------------------------------------------


def test_http_client_speaks_chat_completions():
    import httpx

    from guibridge.assistant import HttpModelClient

    seen = {}

    def respond(request: httpx.Request):
        seen["url"] = str(request.url)
        seen["body"] = json.loads(request.content)
        return httpx.Response(
            200,
            json=scripted_response({"tool_call": {"name": "transfer", "arguments": {"amount": 7}}}),
        )

    transport = httpx.MockTransport(respond)
    client = HttpModelClient(
        "http://model.local/v1", "demo-model", client=httpx.Client(transport=transport)
    )
    response = client.chat({
        "messages": [{"role": "user", "content": "seven"}],
        "tools": [{"type": "function", "function": {"name": "transfer", "parameters": {}}}],
    })
    assert seen["url"] == "http://model.local/v1/chat/completions"
    assert seen["body"]["model"] == "demo-model"
    assert seen["body"]["messages"][0]["content"] == "seven"
    assert seen["body"]["tools"][0]["function"]["name"] == "transfer"
    assert first_tool_call(response) == ToolCall("transfer", {"amount": 7})
    assert client.request_count == 1
    assert len(client.latencies) == 1


def test_http_client_maps_failures_to_transport_errors():
    import httpx

    from guibridge.assistant import HttpModelClient

    def fail(request: httpx.Request):
        return httpx.Response(500, text="boom")

    client = HttpModelClient(
        "http://model.local/v1", "m", client=httpx.Client(transport=httpx.MockTransport(fail))
    )
    with pytest.raises(ModelTransportError):
        client.chat({"messages": []})


def test_concurrent_utterances_serialize_fifo():
    import threading

    order = []

    def scripted(request):
        # model briefly "thinks" so overlapping turns would interleave if
        # they were not serialized
        import time as _time

        _time.sleep(0.02)
        return {"tool_call": {"name": "transfer", "arguments": {}}}

    assistant, _session, client = make_assistant(scripted)
    original = assistant._handle_utterance

    def traced(text):
        order.append(f"start:{text}")
        turn = original(text)
        order.append(f"end:{text}")
        return turn

    assistant._handle_utterance = traced
    threads = [
        threading.Thread(target=assistant.handle_utterance, args=(f"turn {i}",))
        for i in range(3)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # every start is immediately followed by its own end: no interleaving
    for i in range(0, len(order), 2):
        assert order[i].startswith("start:")
        assert order[i + 1] == order[i].replace("start:", "end:")
