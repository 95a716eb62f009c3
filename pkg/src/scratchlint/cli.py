"""Command-line interface.

Subcommands: analyze one project, aggregate a corpus, fetch projects from
the network, and list the detector catalogue. Exit codes follow lint-tool
convention: 0 = ran with no findings, 1 = ran and found patterns,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import detectors, report
from .config import load_settings
from .detectors import UnknownDetectorError
from .report import InputNotFoundError

EXIT_CLEAN = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scratchlint",
        description="Find common bug patterns in Scratch 3 projects.",
    )
    parser.add_argument("--config", help="JSON settings file (endpoints, rate limit, jobs)")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze one project file or project id")
    analyze.add_argument("source", help="path to a .json/.sb3 file, or a numeric project id")
    analyze.add_argument("--format", choices=("text", "json", "csv"), default="text")
    analyze.add_argument("--detectors", help="comma-separated detector ids (default: all)")
    analyze.add_argument("--output", help="write the report here instead of stdout")

    corpus = sub.add_parser("corpus", help="analyze a directory or manifest of projects")
    corpus.add_argument("source", help="directory of project files, or a manifest.jsonl")
    corpus.add_argument("--format", choices=("text", "json", "csv"), default="text")
    corpus.add_argument("--detectors", help="comma-separated detector ids (default: all)")
    corpus.add_argument("--jobs", type=int, default=None, help="worker count (default: settings)")
    corpus.add_argument("--reports", help="write per-project reports as JSON lines to this file")
    corpus.add_argument("--figures", help="also render bar charts into this directory")
    corpus.add_argument("--output", help="write the stats here instead of stdout")

    fetch = sub.add_parser("fetch", help="download projects and build a corpus manifest")
    fetch.add_argument("ids", nargs="+", type=int, help="project ids to download")
    fetch.add_argument("--out", default="corpus", help="destination directory (default: corpus)")
    fetch.add_argument("--exclude-remixes", action="store_true", help="skip remixed projects")
    fetch.add_argument("--jobs", type=int, default=None)
    fetch.add_argument("--rate-limit", type=float, default=None, help="max requests per second")

    det = sub.add_parser("detectors", help="detector catalogue commands")
    det_sub = det.add_subparsers(dest="detectors_command", required=True)
    det_list = det_sub.add_parser("list", help="list all detectors")
    det_list.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _parse_detector_ids(value: str | None) -> list[str] | None:
    if value is None:
        return None
    return [part.strip() for part in value.split(",") if part.strip()]


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _cmd_analyze(args, settings) -> int:
    ids = _parse_detector_ids(args.detectors)
    result = report.analyze_one(args.source, ids, settings=settings)
    _emit(report.render(result, args.format), args.output)
    if result.status != report.STATUS_OK:
        return EXIT_ERROR
    return EXIT_FINDINGS if result.findings else EXIT_CLEAN


def _cmd_corpus(args, settings) -> int:
    ids = _parse_detector_ids(args.detectors)
    jobs = args.jobs if args.jobs is not None else settings.jobs
    sink = None
    reports_file = None
    if args.reports:
        reports_file = open(args.reports, "w", encoding="utf-8")

        def sink(r):
            reports_file.write(json.dumps(report.report_dict(r)) + "\n")

    try:
        stats = report.analyze_corpus(args.source, jobs=jobs, detector_ids=ids, on_report=sink)
    finally:
        if reports_file is not None:
            reports_file.close()

    _emit(report.render(stats, args.format), args.output)
    if args.figures:
        from .figures import render_corpus_figures

        for path in render_corpus_figures(stats, args.figures):
            sys.stderr.write(f"wrote {path}\n")
    return EXIT_FINDINGS if stats.total_findings else EXIT_CLEAN


def _cmd_fetch(args, settings) -> int:
    from .fetcher import build_corpus

    manifest = build_corpus(
        args.ids,
        args.out,
        settings,
        exclude_remixes=args.exclude_remixes,
        concurrency=args.jobs if args.jobs is not None else settings.jobs,
    )
    counts: dict[str, int] = {}
    for entry in manifest.entries.values():
        counts[entry.status] = counts.get(entry.status, 0) + 1
    summary = ", ".join(f"{status}: {count}" for status, count in sorted(counts.items()))
    sys.stdout.write(f"manifest {manifest.path}: {summary or 'empty'}\n")
    return EXIT_CLEAN


def _cmd_detectors_list(args) -> int:
    descriptors = detectors.list_detectors()
    if args.format == "json":
        doc = [
            {"id": d.id, "category": d.category, "description": d.description}
            for d in descriptors
        ]
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        width = max(len(d.id) for d in descriptors)
        for d in descriptors:
            sys.stdout.write(f"{d.id.ljust(width)}  {d.category:<8} {d.description}\n")
    return EXIT_CLEAN


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(
            config_path=args.config,
            rate_limit=getattr(args, "rate_limit", None),
        )
        if args.command == "analyze":
            return _cmd_analyze(args, settings)
        if args.command == "corpus":
            return _cmd_corpus(args, settings)
        if args.command == "fetch":
            return _cmd_fetch(args, settings)
        if args.command == "detectors":
            return _cmd_detectors_list(args)
        parser.error(f"unknown command {args.command!r}")
    except (InputNotFoundError, UnknownDetectorError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
