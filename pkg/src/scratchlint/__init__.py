"""Static analysis for Scratch 3 projects.

Parses project files into a typed syntax tree, detects a catalogue of 25
bug patterns, computes complexity metrics, and aggregates findings over
corpora of downloaded projects.
"""

from .builder import AstBuildError, build_ast
from .detectors import (
    DetectorDescriptor,
    Finding,
    UnknownDetectorError,
    list_detectors,
    run,
)
from .metrics import ProjectMetrics, cyclomatic_complexity, project_metrics, wmc
from .model import (
    DanglingReferenceError,
    MalformedJsonError,
    MissingArchiveEntryError,
    NotScratch3Error,
    ProjectLoadError,
    RawProject,
    load_project,
    load_project_file,
    serialize,
    validate,
)
from .nodes import Locator, Program
from .report import AnalysisReport, CorpusStats, analyze_corpus, analyze_one, render
from .visitor import NodeVisitor, iter_nodes, visit

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AstBuildError",
    "CorpusStats",
    "DanglingReferenceError",
    "DetectorDescriptor",
    "Finding",
    "Locator",
    "MalformedJsonError",
    "MissingArchiveEntryError",
    "NodeVisitor",
    "NotScratch3Error",
    "Program",
    "ProjectLoadError",
    "ProjectMetrics",
    "RawProject",
    "UnknownDetectorError",
    "analyze_corpus",
    "analyze_one",
    "build_ast",
    "cyclomatic_complexity",
    "iter_nodes",
    "list_detectors",
    "load_project",
    "load_project_file",
    "project_metrics",
    "render",
    "run",
    "serialize",
    "validate",
    "visit",
    "wmc",
]
