"""Shared helpers for the test suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from projectbuilder import ProjectBuilder  # noqa: E402

from scratchlint import build_ast, load_project, run  # noqa: E402
from scratchlint.nodes import Program  # noqa: E402


def program_of(pb: ProjectBuilder) -> Program:
    return build_ast(load_project(pb.to_bytes()))


def findings_of(pb: ProjectBuilder, detector_id: str | None = None):
    findings = run(program_of(pb))
    if detector_id is None:
        return findings
    return [f for f in findings if f.detector == detector_id]


@pytest.fixture
def fixture_corpus_dir(tmp_path):
    """Directory with the 25 positive detector fixtures as project files."""
    from fixtures import FIXTURES

    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i, (detector_id, (positive, _)) in enumerate(sorted(FIXTURES.items())):
        (corpus / f"{i:02d}_{detector_id}.json").write_bytes(positive().to_bytes())
    return corpus


@pytest.fixture
def full_fixture_corpus_dir(tmp_path):
    """Directory with all 50 fixtures (positives and negatives)."""
    from fixtures import FIXTURES

    corpus = tmp_path / "corpus50"
    corpus.mkdir()
    for i, (detector_id, (positive, negative)) in enumerate(sorted(FIXTURES.items())):
        (corpus / f"{i:02d}_{detector_id}_pos.json").write_bytes(positive().to_bytes())
        (corpus / f"{i:02d}_{detector_id}_neg.json").write_bytes(negative().to_bytes())
    return corpus
