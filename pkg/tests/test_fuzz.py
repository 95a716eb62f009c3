"""Loader robustness against hostile and damaged inputs."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzing import run_fuzz, seed_documents
from scratchlint import load_project, serialize
from scratchlint.model import ProjectLoadError


def test_quick_fuzz_run():
    failures = run_fuzz(1500, seed=1234)
    assert failures == [], failures[:5]


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=400))
def test_arbitrary_bytes_never_crash(data):
    try:
        load_project(data)
    except ProjectLoadError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.binary(max_size=400))
def test_arbitrary_bytes_as_archive_never_crash(data):
    try:
        load_project(data, kind="sb3-archive")
    except ProjectLoadError:
        pass


def test_deeply_nested_json_rejected_cleanly():
    data = (b"[" * 100000) + (b"]" * 100000)
    with pytest.raises(ProjectLoadError):
        load_project(data)


def test_huge_numbers_survive():
    doc = json.loads(seed_documents()[0])
    doc["targets"][0]["volume"] = 10**400
    load_project(json.dumps(doc).encode())


def test_roundtrip_on_seed_documents():
    for data in seed_documents():
        project = load_project(data)
        assert load_project(serialize(project)) == project


def test_non_dict_meta_rejected():
    doc = json.loads(seed_documents()[0])
    doc["meta"] = "3.0.0"
    with pytest.raises(ProjectLoadError):
        load_project(json.dumps(doc).encode())
