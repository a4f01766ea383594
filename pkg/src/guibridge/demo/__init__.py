"""Reference application: banking screens plus the datacenter incident set."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from ..session import AppConfig, GuiSession, load_app_config

CONFIG_NAMES = ("banking", "incidents")


def load_config_doc(name: str) -> dict[str, Any]:
    """Raw JSON document for one of the shipped app configs."""
    if name not in CONFIG_NAMES:
        raise ValueError(f"unknown demo config {name!r}; available: {CONFIG_NAMES}")
    path = resources.files(__package__) / "configs" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def load_demo_config(name: str) -> AppConfig:
    return load_app_config(load_config_doc(name))


def build_demo_graph(include_incidents: bool = True) -> AppConfig:
    """The combined demo app: banking routes plus the incident screens.

    Route names are disjoint between the two sections, so the merge keeps
    every screen addressable from one session.
    """
    doc = load_config_doc("banking")
    if include_incidents:
        incidents = load_config_doc("incidents")
        doc["routes"] = doc["routes"] + incidents["routes"]
        for section in ("labels", "synonyms", "feedback"):
            doc[section] = {**doc.get(section, {}), **incidents.get(section, {})}
        doc["commands"] = doc.get("commands", []) + incidents.get("commands", [])
    return load_app_config(doc)


def build_demo_session(include_incidents: bool = True) -> GuiSession:
    return GuiSession(build_demo_graph(include_incidents))
