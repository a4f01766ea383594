"""Command line entry point: ``evalkit run``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..assistant import HttpModelClient
from . import builtin_dataset_path, default_system_prompt
from .cases import load_dataset
from .report import render_report
from .runner import mock_client_from_script, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evalkit", description="Function-calling evaluation harness")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a dataset against an endpoint or a scripted mock")
    run.add_argument("--dataset", required=True, help="dataset .jsonl path, or 'builtin' for the shipped incident set")
    endpoint = run.add_mutually_exclusive_group(required=True)
    endpoint.add_argument("--endpoint", help="chat-completions base URL")
    endpoint.add_argument("--mock", help="mock script JSON path")
    run.add_argument("--model", default="model", help="model name sent to the endpoint / reported")
    run.add_argument("--language", choices=("en", "nl"), default="en")
    run.add_argument("--system-prompt", help="path to a system prompt file (default: shipped prompt)")
    run.add_argument("--sap", choices=("on", "off"), default="off", help="schema-aligned repair pass before scoring")
    run.add_argument("--parallel", type=int, default=1, metavar="N")
    run.add_argument("--format", choices=("text", "csv", "md"), default="text")
    run.add_argument("--out", help="write the report here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    dataset_path = args.dataset
    if dataset_path == "builtin":
        dataset_path = builtin_dataset_path(args.language)
    dataset = load_dataset(dataset_path)

    if args.system_prompt:
        system_prompt = Path(args.system_prompt).read_text(encoding="utf-8").rstrip("\n")
    else:
        system_prompt = default_system_prompt(args.language)

    if args.mock:
        client = mock_client_from_script(args.mock, dataset)
    else:
        client = HttpModelClient(args.endpoint, args.model)

    report = run_suite(
        dataset,
        client,
        system_prompt,
        args.language,
        sap=args.sap == "on",
        parallel=args.parallel,
        model=args.model,
    )
    rendered = render_report(report, args.format)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
        print(f"{report.case_count} cases, mean accuracy {report.mean_accuracy:.1f}% -> {args.out}")
    else:
        sys.stdout.write(rendered)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
