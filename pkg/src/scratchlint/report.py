"""Per-project analysis reports and corpus-level aggregation.

A corpus run produces one row per detector (projects affected, total
instances, average WMC of affected projects) plus corpus totals, rendered
as text, JSON, or CSV with identical numbers in every format.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from . import detectors
from .builder import AstBuildError, build_ast
from .detectors import Finding
from .fetcher import load_manifest
from .metrics import ProjectMetrics, project_metrics
from .model import ProjectLoadError, load_project_file
from .nodes import Locator

STATUS_OK = "ok"
STATUS_PARSE_ERROR = "parse-error"

CSV_STATS_HEADER = ("pattern", "projects", "instances", "avg_wmc")
CSV_FINDINGS_HEADER = ("detector", "actor", "unit", "block_id", "message")


class InputNotFoundError(Exception):
    pass


@dataclass
class AnalysisReport:
    project: str
    status: str
    findings: list[Finding] = field(default_factory=list)
    metrics: ProjectMetrics | None = None
    error: str | None = None


@dataclass
class DetectorStats:
    affected_projects: int = 0
    total_instances: int = 0
    wmc_sum: int = 0

    @property
    def avg_wmc(self) -> float:
        if self.affected_projects == 0:
            return 0.0
        return self.wmc_sum / self.affected_projects


@dataclass
class CorpusStats:
    rows: dict[str, DetectorStats]
    projects_analyzed: int = 0
    parse_errors: int = 0
    projects_with_findings: int = 0
    total_findings: int = 0

    @classmethod
    def empty(cls) -> "CorpusStats":
        return cls(rows={d.id: DetectorStats() for d in detectors.list_detectors()})

    def add(self, report: AnalysisReport) -> None:
        if report.status != STATUS_OK:
            self.parse_errors += 1
            return
        self.projects_analyzed += 1
        if report.findings:
            self.projects_with_findings += 1
        self.total_findings += len(report.findings)
        wmc = report.metrics.wmc if report.metrics else 0
        per_detector: dict[str, int] = {}
        for finding in report.findings:
            per_detector[finding.detector] = per_detector.get(finding.detector, 0) + 1
        for detector_id, count in per_detector.items():
            row = self.rows.setdefault(detector_id, DetectorStats())
            row.affected_projects += 1
            row.total_instances += count
            row.wmc_sum += wmc


def analyze_file(path: str | Path, detector_ids: Iterable[str] | None = None) -> AnalysisReport:
    """Analyze one local project file (.json or .sb3)."""
    path = Path(path)
    if not path.exists():
        raise InputNotFoundError(f"no such file: {path}")
    try:
        raw = load_project_file(path)
        program = build_ast(raw)
    except (ProjectLoadError, AstBuildError) as exc:
        return AnalysisReport(project=str(path), status=STATUS_PARSE_ERROR, error=str(exc))
    findings = detectors.run(program, detector_ids)
    return AnalysisReport(
        project=str(path),
        status=STATUS_OK,
        findings=findings,
        metrics=project_metrics(program),
    )


def analyze_one(
    source: str | Path,
    detector_ids: Iterable[str] | None = None,
    *,
    settings=None,
    cache_dir: str | Path | None = None,
) -> AnalysisReport:
    """Analyze a local file, or a numeric project id fetched from the network."""
    text = str(source)
    if not Path(text).exists() and text.isdigit():
        from .fetcher import Fetcher

        dest = Path(cache_dir) if cache_dir is not None else Path.cwd() / "projects"
        path = Fetcher(settings).fetch_project(int(text), dest)
        report = analyze_file(path, detector_ids)
        report.project = text
        return report
    return analyze_file(text, detector_ids)


def corpus_paths(source: str | Path) -> list[Path]:
    """Project files of a corpus: a directory of .json/.sb3, or a manifest."""
    source = Path(source)
    if source.is_dir():
        files = [p for p in source.iterdir() if p.suffix in (".json", ".sb3")]
        return sorted(files)
    if source.is_file():
        return load_manifest(source).project_paths()
    raise InputNotFoundError(f"no such corpus directory or manifest: {source}")


def analyze_corpus(
    source: str | Path | list[Path],
    *,
    jobs: int = 1,
    detector_ids: Iterable[str] | None = None,
    on_report: Callable[[AnalysisReport], None] | None = None,
) -> CorpusStats:
    """Analyze every project of a corpus and aggregate per-detector stats.

    Projects are analyzed concurrently (jobs workers) but reports are
    delivered and aggregated in corpus order, so output is deterministic
    for any worker count. Unparseable projects are counted, not dropped.
    """
    paths = source if isinstance(source, list) else corpus_paths(source)
    selected = list(detector_ids) if detector_ids is not None else None
    stats = CorpusStats.empty()

    def analyze(path: Path) -> AnalysisReport:
        return analyze_file(path, selected)

    if jobs <= 1:
        reports = map(analyze, paths)
    else:
        pool = ThreadPoolExecutor(max_workers=jobs)
        reports = pool.map(analyze, paths)

    for report in reports:
        stats.add(report)
        if on_report is not None:
            on_report(report)
    if jobs > 1:
        pool.shutdown()
    return stats


# -- rendering ----------------------------------------------------------------


def render(obj: CorpusStats | AnalysisReport, format: str = "text") -> str:
    if format not in ("text", "json", "csv"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(obj, CorpusStats):
        return _render_stats(obj, format)
    return _render_report(obj, format)


def _stats_rows(stats: CorpusStats) -> list[tuple[str, int, int, str]]:
    rows = []
    for descriptor in detectors.list_detectors():
        row = stats.rows.get(descriptor.id, DetectorStats())
        rows.append(
            (descriptor.id, row.affected_projects, row.total_instances, f"{row.avg_wmc:.2f}")
        )
    return rows


def _render_stats(stats: CorpusStats, format: str) -> str:
    rows = _stats_rows(stats)
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_STATS_HEADER)
        writer.writerows(rows)
        return out.getvalue()
    if format == "json":
        return json.dumps(
            {
                "patterns": [
                    {"pattern": r[0], "projects": r[1], "instances": r[2], "avg_wmc": float(r[3])}
                    for r in rows
                ],
                "totals": {
                    "projects_analyzed": stats.projects_analyzed,
                    "parse_errors": stats.parse_errors,
                    "projects_with_findings": stats.projects_with_findings,
                    "total_findings": stats.total_findings,
                },
            },
            indent=2,
        )
    width = max(len(r[0]) for r in rows)
    lines = [f"{'pattern'.ljust(width)}  projects  instances  avg_wmc"]
    for pattern, projects, instances, avg in rows:
        lines.append(f"{pattern.ljust(width)}  {projects:>8}  {instances:>9}  {avg:>7}")
    lines.append("")
    lines.append(
        f"projects analyzed: {stats.projects_analyzed}  "
        f"parse errors: {stats.parse_errors}  "
        f"with findings: {stats.projects_with_findings}  "
        f"total findings: {stats.total_findings}"
    )
    return "\n".join(lines) + "\n"


def _locator_dict(locator: Locator) -> dict:
    return {
        "actor": locator.actor,
        "script": locator.script_index,
        "proccode": locator.proccode,
        "path": list(locator.path),
        "block_id": locator.block_id,
    }


def _finding_dict(finding: Finding) -> dict:
    return {
        "detector": finding.detector,
        "actor": finding.actor,
        "message": finding.message,
        "locator": _locator_dict(finding.locator),
    }


def report_dict(report: AnalysisReport) -> dict:
    doc: dict = {
        "project": report.project,
        "status": report.status,
        "findings": [_finding_dict(f) for f in report.findings],
    }
    if report.error is not None:
        doc["error"] = report.error
    if report.metrics is not None:
        doc["metrics"] = {
            "wmc": report.metrics.wmc,
            "script_count": report.metrics.script_count,
            "procedure_count": report.metrics.procedure_count,
            "block_count": report.metrics.block_count,
            "actors": [
                {
                    "name": a.name,
                    "wmc": a.wmc,
                    "script_count": a.script_count,
                    "procedure_count": a.procedure_count,
                    "block_count": a.block_count,
                }
                for a in report.metrics.actors
            ],
        }
    return doc


def _render_report(report: AnalysisReport, format: str) -> str:
    if format == "json":
        return json.dumps(report_dict(report), indent=2)
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_FINDINGS_HEADER)
        for f in report.findings:
            writer.writerow(
                (f.detector, f.actor, f.locator.unit_label(), f.locator.block_id, f.message)
            )
        return out.getvalue()

    lines = [f"{report.project}: {report.status}"]
    if report.error:
        lines.append(f"  error: {report.error}")
    if report.metrics is not None:
        m = report.metrics
        lines.append(
            f"  wmc={m.wmc} scripts={m.script_count} "
            f"procedures={m.procedure_count} blocks={m.block_count}"
        )
    for f in report.findings:
        lines.append(f"  [{f.detector}] {f.actor} {f.locator.unit_label()}: {f.message}")
    if report.status == STATUS_OK and not report.findings:
        lines.append("  no findings")
    return "\n".join(lines) + "\n"
