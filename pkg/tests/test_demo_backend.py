import json
import threading
import time

import pytest
from fastapi.testclient import TestClient

from guibridge.assistant import ScriptedModelClient
from guibridge.demo import build_demo_graph, load_config_doc
from guibridge.demo.backend import DemoBackend, create_app


def make_client(script=()):
    backend = DemoBackend(client=ScriptedModelClient(list(script)))
    app = create_app(backend)
    return TestClient(app), backend


def collect_events(client, n, action):
    """Open the SSE stream on a side thread, run the action, return n events."""
    collected = []

    def run():
        with client.stream("GET", "/events", params={"limit": n}) as stream:
            collected.append("".join(stream.iter_text()))

    thread = threading.Thread(target=run)
    thread.start()
    time.sleep(0.2)
    action()
    thread.join(timeout=10)
    assert not thread.is_alive(), "event stream did not complete"
    body = collected[0]
    return [json.loads(line[6:]) for line in body.splitlines() if line.startswith("data: ")]


# -- build_demo_graph ---------------------------------------------------------


def test_demo_graph_contains_banking_and_incident_screens():
    config = build_demo_graph()
    names = [t.name for t in config.graph.to_tools()]
    assert {"transfer", "creditcard", "offices-map", "record_incident"} <= set(names)
    card = config.graph.route("creditcard")
    action = card.parameter("action")
    assert action.enum_values == ("replace", "cancel")
    transfer = config.graph.route("transfer")
    marker = transfer.parameter("isNewTransfer")
    assert marker.kind == "boolean" and not marker.required


def test_route_count_matches_shipped_configs():
    banking = load_config_doc("banking")
    incidents = load_config_doc("incidents")

    def count(docs):
        return sum(1 + count(d.get("children", [])) for d in docs)

    declared = count(banking["routes"]) + count(incidents["routes"])
    assert len(build_demo_graph().graph) == declared


def test_incident_toolset_shape():
    config = build_demo_graph()
    incident_tools = [
        config.graph.route(name)
        for name in ("record_incident", "report_water_leak", "report_power_outage",
                     "search_incidents", "update_incident", "log_access")
    ]
    assert len(incident_tools) == 6
    main = [r for r in incident_tools if len(r.parameters) >= 5]
    assert len(main) == 3
    record = config.graph.route("record_incident")
    assert record.parameter("fire_height_m").kind == "number"
    assert "battery" in record.parameter("fire_material_type").enum_values
    assert config.synonyms["record_incident"].member_for("power cell") == "battery"


def test_config_validation_errors_carry_paths():
    from guibridge.session import load_app_config
    from guibridge.tools import ConfigurationError

    doc = {"routes": [{"name": "a", "description": "A",
                       "parameters": [{"name": "p", "type": "integer", "oops": 1}]}]}
    with pytest.raises(ConfigurationError) as err:
        load_app_config(doc)
    assert "routes[0].parameters[0]" in str(err.value)


# -- HTTP API -----------------------------------------------------------------


def test_utterance_go_back_fastpath_and_events():
    client, backend = make_client()
    backend.session.navigate("app://transfer", source="assistant")
    turns = []

    def act():
        response = client.post("/utterance", json={"text": "go back"})
        assert response.status_code == 200
        turns.append(response.json())

    events = collect_events(client, 3, act)
    turn = turns[0]
    assert turn["fastpath"] is True
    assert turn["model_calls"] == 0
    screen_change = next(e for e in events if e["kind"] == "screen_change")
    assert screen_change["state"]["screen_id"] == "accounts"


def test_deeplink_replay_reproduces_state():
    client, backend = make_client(
        [{"tool_call": {"name": "creditcard", "arguments": {"limit": 9000}}}]
    )
    response = client.post("/utterance", json={"text": "set my limit to 9000"})
    original = client.get("/state").json()
    history = client.get("/history").json()["items"]
    replayable = [item for item in history if item.get("replay")]
    assert replayable, history
    link = replayable[-1]["replay"]
    assert link == "app://creditcard?limit=9000"

    backend.session.navigate("app://accounts", source="assistant")
    assert client.get("/state").json()["screen_id"] == "accounts"

    replayed = client.post("/deeplink", json={"link": link})
    assert replayed.status_code == 200
    after = client.get("/state").json()
    assert after["screen_id"] == original["screen_id"]
    assert after["parameter_values"] == original["parameter_values"]
    assert after["screen_text"] == original["screen_text"]


def test_malformed_deeplink_rejected_without_mutation():
    client, backend = make_client()
    before = client.get("/state").json()
    for bad in ["http://nope", "app://creditcard?limit=abc", "app://ghost-screen"]:
        response = client.post("/deeplink", json={"link": bad})
        assert response.status_code == 400
        assert "reason" in response.json()
    assert client.get("/state").json() == before


def test_malformed_utterance_rejected():
    client, _ = make_client()
    assert client.post("/utterance", json={}).status_code == 400
    assert client.post("/utterance", content=b"not json").status_code == 400


def test_state_read_is_pure():
    client, _ = make_client()
    assert client.get("/state").json() == client.get("/state").json()


def test_every_gui_turn_appends_history_and_events():
    client, backend = make_client(
        [{"tool_call": {"name": "transfer", "arguments": {"destination": "Robert", "amount": 50}}}]
    )
    published_before = backend.broker.published
    history_before = len([i for i in backend.history if i.kind == "gui_action"])
    client.post("/utterance", json={"text": "Transfer 50 euros to Robert"})
    gui_items = [i for i in backend.history if i.kind == "gui_action"]
    assert len(gui_items) == history_before + 1
    assert backend.broker.published > published_before


def test_history_items_mix_user_and_gui_kinds():
    client, _ = make_client(
        [{"tool_call": {"name": "offices-map", "arguments": {}}}]
    )
    client.post("/utterance", json={"text": "where are your offices?"})
    items = client.get("/history").json()["items"]
    kinds = [i["kind"] for i in items]
    assert kinds[0] == "user"
    assert "gui_action" in kinds
    gui = next(i for i in items if i["kind"] == "gui_action")
    assert gui["display"] == "Showing offices on the map"
    assert gui["replay"] == "app://map/offices-map"


def test_highlight_event_carries_declared_ids():
    client, _backend = make_client(
        [{"tool_call": {"name": "offices-map", "arguments": {}}}]
    )
    events = collect_events(
        client, 4, lambda: client.post("/utterance", json={"text": "show offices"})
    )
    highlight = next(e for e in events if e["kind"] == "highlight")
    assert highlight["targets"] == ["nav:map", "option:offices"]
    assert highlight["duration_ms"] > 0


def test_unconfigured_model_yields_text_turn():
    # default backend client answers with guidance text instead of a call
    backend = DemoBackend()
    app = create_app(backend)
    with TestClient(app) as http:
        turn = http.post("/utterance", json={"text": "do banking things"}).json()
    assert turn["tool_call"] is None
    assert "No model endpoint" in turn["assistant_text"]


def test_mcp_mounted_on_demo_app():
    client, _ = make_client()
    response = client.post("/mcp", json={"jsonrpc": "2.0", "id": 1, "method": "initialize"})
    assert response.json()["result"]["serverInfo"]["name"] == "guibridge-demo"


def test_demo_state_seed_is_deterministic():
    from guibridge.demo.backend import DemoAppState

    assert DemoAppState.seeded().balances == DemoAppState.seeded().balances


def test_history_also_exposes_conversation_entries():
    client, _ = make_client(
        [{"tool_call": {"name": "transfer", "arguments": {"amount": 5}}}]
    )
    client.post("/utterance", json={"text": "five euros"})
    doc = client.get("/history").json()
    kinds = [e["kind"] for e in doc["entries"]]
    assert kinds[0] == "user_text"
    assert "tool_call" in kinds and "tool_result" in kinds
    call_entry = next(e for e in doc["entries"] if e["kind"] == "tool_call")
    assert call_entry["payload"]["name"] == "transfer"
    stamps = [e["timestamp"] for e in doc["entries"]]
    assert stamps == sorted(stamps)


def test_event_broker_fans_out_to_multiple_subscribers():
    from guibridge.demo.backend import EventBroker

    broker = EventBroker()
    first = broker.subscribe()
    second = broker.subscribe()
    broker.publish({"kind": "speech", "text": "hello"})
    assert first.get_nowait() == {"kind": "speech", "text": "hello"}
    assert second.get_nowait() == {"kind": "speech", "text": "hello"}
    broker.unsubscribe(second)
    broker.publish({"kind": "speech", "text": "again"})
    assert first.get_nowait()["text"] == "again"
    assert second.empty()
