"""Detector registry: enumeration, selection, and execution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..nodes import Program
from .common import Finding

DetectFn = Callable[[Program], list[Finding]]

CATEGORIES = ("syntax", "general", "scratch")
_CATEGORY_ORDER = {c: i for i, c in enumerate(CATEGORIES)}


class UnknownDetectorError(Exception):
    def __init__(self, detector_id: str):
        self.detector_id = detector_id
        super().__init__(f"unknown detector id {detector_id!r}")


@dataclass(frozen=True)
class DetectorDescriptor:
    id: str
    category: str
    description: str


_REGISTRY: dict[str, tuple[DetectorDescriptor, DetectFn]] = {}


def detector(id: str, category: str, description: str):
    """Class/function decorator registering a detector under a stable id."""
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}")

    def wrap(fn: DetectFn) -> DetectFn:
        if id in _REGISTRY:
            raise ValueError(f"duplicate detector id {id!r}")
        _REGISTRY[id] = (DetectorDescriptor(id=id, category=category, description=description), fn)
        return fn

    return wrap


def list_detectors(category: str | None = None) -> list[DetectorDescriptor]:
    """All registered detectors in stable (category, id) order."""
    descriptors = sorted(
        (d for d, _ in _REGISTRY.values()),
        key=lambda d: (_CATEGORY_ORDER[d.category], d.id),
    )
    if category is not None:
        descriptors = [d for d in descriptors if d.category == category]
    return descriptors


def run(program: Program, selection: Iterable[str] | None = None) -> list[Finding]:
    """Run the selected detectors (all when selection is None) over a program.

    Findings are grouped by detector in descriptor order; within one
    detector they follow traversal order. Output is deterministic.
    """
    if selection is not None:
        wanted = set(selection)
        for detector_id in wanted:
            if detector_id not in _REGISTRY:
                raise UnknownDetectorError(detector_id)
    else:
        wanted = None

    findings: list[Finding] = []
    for descriptor in list_detectors():
        if wanted is not None and descriptor.id not in wanted:
            continue
        _, fn = _REGISTRY[descriptor.id]
        findings.extend(fn(program))
    return findings
