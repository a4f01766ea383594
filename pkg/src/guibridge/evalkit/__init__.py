"""Function-calling evaluation harness: per-parameter accuracy and latency."""

from __future__ import annotations

from importlib import resources

from .cases import EvalCase, filter_language, load_dataset
from .report import AccuracyReport, CaseResult, render_report
from .runner import (
    DatasetMockClient,
    echo_ideal_client,
    mock_client_from_script,
    run_suite,
)
from .scoring import Matcher, Mismatch, score_call

LANGUAGES = ("en", "nl")


def default_system_prompt(language: str = "en") -> str:
    """The evaluation system prompt shipped with the harness."""
    if language not in LANGUAGES:
        raise ValueError(f"no system prompt for language {language!r}")
    path = resources.files(__package__) / "data" / f"system_prompt_{language}.txt"
    return path.read_text(encoding="utf-8").rstrip("\n")


def builtin_dataset_path(language: str = "en") -> str:
    """Filesystem path of the shipped incident dataset for a language."""
    if language not in LANGUAGES:
        raise ValueError(f"no builtin dataset for language {language!r}")
    return str(resources.files(__package__) / "data" / f"incidents_{language}.jsonl")
