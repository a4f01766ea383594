"""Suite execution: one tool-calling request per case, scored and timed.

Latency is wall-clock around the model request only, measured with the
monotonic clock, so it is unaffected by scheduling when cases run in
parallel. A transport failure marks the case errored: it scores zero but its
latency is left out of the mean.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from ..assistant import (
    ModelClient,
    ModelTransportError,
    first_tool_call,
    scripted_response,
)
from ..sap import RepairLog, SynonymTable, repair_call
from ..tools import ConfigurationError, ToolCall
from .cases import EvalCase, filter_language
from .report import AccuracyReport, CaseResult
from .scoring import Mismatch, score_call


def case_request(case: EvalCase, system_prompt: str) -> dict[str, Any]:
    return {
        "messages": [
            {"role": "system", "content": system_prompt},
            {"role": "user", "content": case.utterance},
        ],
        "tools": [t.as_function() for t in case.tools],
    }


def run_case(case: EvalCase, client: ModelClient, system_prompt: str, sap: bool) -> CaseResult:
    request = case_request(case, system_prompt)
    started = time.perf_counter()
    try:
        response = client.chat(request)
    except ModelTransportError:
        return CaseResult(case.id, 0.0, latency=None, errored=True)
    latency = time.perf_counter() - started

    call = first_tool_call(response)
    if call is None:
        return CaseResult(
            case.id, 0.0, latency, mismatches=[Mismatch("response", "no_call")]
        )
    accuracy, mismatches = score_call(case.ideal, call, case.matchers)
    result = CaseResult(case.id, accuracy, latency, mismatches)
    if sap:
        repaired, log = _sap_pass(case, call)
        result.sap_accuracy, _ = score_call(case.ideal, repaired, case.matchers)
        result.sap_repairs = len(log.repaired)
    return result


def _sap_pass(case: EvalCase, call: ToolCall) -> tuple[ToolCall, RepairLog]:
    schema = case.tool(call.name)
    if schema is None:
        return call, RepairLog()
    synonyms = SynonymTable(case.synonyms.get(call.name, {}))
    return repair_call(call, schema, synonyms)


def run_suite(
    dataset: Sequence[EvalCase],
    client: ModelClient,
    system_prompt: str,
    language: str,
    *,
    sap: bool = False,
    parallel: int = 1,
    model: str = "model",
    size: str = "-",
) -> AccuracyReport:
    """Run every case of the given language and aggregate the results."""
    cases = filter_language(dataset, language)
    if not cases:
        raise ConfigurationError(f"dataset has no {language!r} cases")
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(
                pool.map(lambda c: run_case(c, client, system_prompt, sap), cases)
            )
    else:
        results = [run_case(c, client, system_prompt, sap) for c in cases]
    return AccuracyReport(model, language, results, sap_enabled=sap, size=size)


# -- scripted mock clients -------------------------------------------------------


class DatasetMockClient(ModelClient):
    """Mock endpoint that answers per-case scripted responses.

    The incoming request is matched to its case by the last user message
    (the utterance), which the dataset guarantees to be unique.
    """

    def __init__(self, cases: Sequence[EvalCase], responder: Callable[[EvalCase], dict[str, Any]]):
        super().__init__()
        self._by_utterance: dict[str, EvalCase] = {}
        for case in cases:
            if case.utterance in self._by_utterance:
                raise ConfigurationError(
                    f"mock needs unique utterances; duplicate: {case.utterance!r}"
                )
            self._by_utterance[case.utterance] = case
        self._responder = responder

    def _send(self, request: dict[str, Any]) -> dict[str, Any]:
        utterance = None
        for message in reversed(request.get("messages", [])):
            if message.get("role") == "user":
                utterance = message.get("content")
                break
        case = self._by_utterance.get(utterance or "")
        if case is None:
            raise ModelTransportError(f"mock has no case for utterance {utterance!r}")
        item = self._responder(case)
        if "error" in item:
            raise ModelTransportError(str(item["error"]))
        return scripted_response(item)


def echo_ideal_client(cases: Sequence[EvalCase]) -> DatasetMockClient:
    """Mock that replies with each case's ideal call; scores 100% by design."""

    def respond(case: EvalCase) -> dict[str, Any]:
        return {"tool_call": {"name": case.ideal.name, "arguments": dict(case.ideal.arguments)}}

    return DatasetMockClient(cases, respond)


def mock_client_from_script(path: str | Path, cases: Sequence[EvalCase]) -> DatasetMockClient:
    """Build a mock from a script file.

    The script is JSON: ``{"mode": "echo_ideal"}`` or
    ``{"mode": "scripted", "responses": {case_id: item}, "default": "echo_ideal"|"no_call"}``
    where item is ``{"tool_call": {...}}``, ``{"text": ...}``, ``{"error": ...}``
    or null (no tool call). Unlisted cases fall back to the default.
    """
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    mode = doc.get("mode", "scripted")
    if mode == "echo_ideal":
        return echo_ideal_client(cases)
    if mode != "scripted":
        raise ConfigurationError(f"unknown mock mode {mode!r}")
    responses: dict[str, Any] = doc.get("responses", {})
    default = doc.get("default", "echo_ideal")

    def respond(case: EvalCase) -> dict[str, Any]:
        if case.id in responses:
            item = responses[case.id]
            if item is None:
                return {"text": ""}
            return item
        if default == "echo_ideal":
            return {"tool_call": {"name": case.ideal.name, "arguments": dict(case.ideal.arguments)}}
        return {"text": ""}

    return DatasetMockClient(cases, respond)
