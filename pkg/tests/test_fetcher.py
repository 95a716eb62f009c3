"""Fetcher tests against the local stub server; no live endpoints."""

import json

import pytest

from projectbuilder import ProjectBuilder, say, when_flag
from scratchlint.config import Settings
from scratchlint.fetcher import (
    Fetcher,
    MalformedDownloadError,
    ProjectNotFoundError,
    RateLimiter,
    STATUS_FAILED,
    STATUS_OK,
    STATUS_SKIPPED_REMIX,
    build_corpus,
    load_manifest,
)
from scratchlint.model import load_project_file
from stubserver import StubServer

EMPTY_PROJECT = ProjectBuilder().to_bytes()


def make_fetcher(stub: StubServer, rate_limit: float = 1000.0, retries: int = 2) -> Fetcher:
    settings = Settings(
        api_base=stub.api_base,
        project_host=stub.project_host,
        rate_limit=rate_limit,
        timeout=5.0,
        retries=retries,
        jobs=3,
    )
    return Fetcher(settings)


@pytest.fixture
def stub():
    with StubServer() as server:
        yield server


def test_fetch_meta_non_remix(stub):
    stub.add_project(101, EMPTY_PROJECT, title="original")
    meta = make_fetcher(stub).fetch_meta(101)
    assert meta.project_id == 101
    assert meta.title == "original"
    assert meta.remix_parent is None


def test_fetch_meta_remix(stub):
    stub.add_project(202, EMPTY_PROJECT, remix_parent=101)
    meta = make_fetcher(stub).fetch_meta(202)
    assert meta.remix_parent == 101


def test_invalid_id_rejected_before_network(stub):
    fetcher = make_fetcher(stub)
    with pytest.raises(ValueError):
        fetcher.fetch_meta(0)
    with pytest.raises(ValueError):
        fetcher.fetch_project(-3, ".")
    assert stub.log == []


def test_fetch_project_writes_loadable_file(stub, tmp_path):
    stub.add_project(7, EMPTY_PROJECT)
    path = make_fetcher(stub).fetch_project(7, tmp_path)
    assert path == tmp_path / "7.json"
    project = load_project_file(path)
    assert len(project.targets) == 1


def test_fetch_project_not_found(stub, tmp_path):
    with pytest.raises(ProjectNotFoundError):
        make_fetcher(stub).fetch_project(999, tmp_path)


def test_fetch_project_retries_through_rate_limit(stub, tmp_path):
    stub.add_project(7, EMPTY_PROJECT)
    stub.rate_limit_next("/projects/7", times=1)
    path = make_fetcher(stub).fetch_project(7, tmp_path)
    assert path.exists()
    assert len(stub.requests_for("/projects/7")) == 2


def test_fetch_project_rate_limit_exhausted(stub, tmp_path):
    from scratchlint.fetcher import RateLimitedError

    stub.add_project(7, EMPTY_PROJECT)
    stub.rate_limit_next("/projects/7", times=5)
    with pytest.raises(RateLimitedError):
        make_fetcher(stub, retries=1).fetch_project(7, tmp_path)


def test_malformed_download_kept_for_triage(stub, tmp_path):
    stub.add_project(13, b"** not json **")
    with pytest.raises(MalformedDownloadError):
        make_fetcher(stub).fetch_project(13, tmp_path)
    assert (tmp_path / "13.json.bad").exists()
    assert not (tmp_path / "13.json").exists()


def test_refetch_overwrites_atomically(stub, tmp_path):
    stub.add_project(7, EMPTY_PROJECT)
    fetcher = make_fetcher(stub)
    first = fetcher.fetch_project(7, tmp_path)
    second = fetcher.fetch_project(7, tmp_path)
    assert first == second
    assert load_project_file(second).stage.name == "Stage"


def test_build_corpus_excludes_remixes(stub, tmp_path):
    stub.add_project(1, EMPTY_PROJECT)
    stub.add_project(2, EMPTY_PROJECT, remix_parent=1)
    manifest = build_corpus([1, 2], tmp_path, exclude_remixes=True, fetcher=make_fetcher(stub))
    assert manifest.entries[1].status == STATUS_OK
    assert manifest.entries[2].status == STATUS_SKIPPED_REMIX
    assert manifest.entries[2].remix_parent == 1
    assert stub.requests_for("/projects/2") == []  # skipped before download


def test_build_corpus_empty_ids(stub, tmp_path):
    manifest = build_corpus([], tmp_path, fetcher=make_fetcher(stub))
    assert manifest.entries == {}


def test_build_corpus_records_failures(stub, tmp_path):
    stub.add_project(1, EMPTY_PROJECT)
    manifest = build_corpus([1, 404404], tmp_path, fetcher=make_fetcher(stub))
    assert manifest.entries[1].status == STATUS_OK
    assert manifest.entries[404404].status == STATUS_FAILED
    assert "not found" in manifest.entries[404404].error


def test_build_corpus_resumes_without_redownload(stub, tmp_path):
    pb = ProjectBuilder()
    pb.sprite("S").script(when_flag(), say("hello"))
    stub.add_project(1, EMPTY_PROJECT)
    stub.add_project(2, pb.to_bytes())
    fetcher = make_fetcher(stub)
    build_corpus([1, 2], tmp_path, fetcher=fetcher)
    before = len(stub.requests_for("/projects/"))
    manifest = build_corpus([1, 2], tmp_path, fetcher=fetcher)
    after = len(stub.requests_for("/projects/"))
    assert after == before  # nothing re-downloaded
    assert sorted(e.project_id for e in manifest.ok_entries()) == [1, 2]


def test_build_corpus_retries_previous_failures(stub, tmp_path):
    fetcher = make_fetcher(stub)
    manifest = build_corpus([5], tmp_path, fetcher=fetcher)
    assert manifest.entries[5].status == STATUS_FAILED
    stub.add_project(5, EMPTY_PROJECT)
    manifest = build_corpus([5], tmp_path, fetcher=fetcher)
    assert manifest.entries[5].status == STATUS_OK


def test_manifest_file_is_replayable(stub, tmp_path):
    stub.add_project(1, EMPTY_PROJECT)
    stub.add_project(2, EMPTY_PROJECT)
    manifest = build_corpus([1, 2], tmp_path, fetcher=make_fetcher(stub))
    reloaded = load_manifest(manifest.path)
    assert {e.project_id for e in reloaded.ok_entries()} == {1, 2}
    for line in manifest.path.read_text().splitlines():
        doc = json.loads(line)
        assert {"id", "status", "path", "checksum", "timestamp"} <= set(doc)


def test_rate_limit_spacing_observed_at_server(stub, tmp_path):
    interval = 0.1
    for i in range(1, 5):
        stub.add_project(i, EMPTY_PROJECT)
    fetcher = make_fetcher(stub, rate_limit=1.0 / interval)
    build_corpus(list(range(1, 5)), tmp_path, exclude_remixes=True,
                 concurrency=3, fetcher=fetcher)
    times = sorted(t for t, _ in stub.log)
    assert len(times) == 8  # 4 meta + 4 project requests
    gaps = [b - a for a, b in zip(times, times[1:])]
    assert all(gap >= interval for gap in gaps), gaps


def test_rate_limiter_unit():
    import time as _time

    limiter = RateLimiter(50.0)  # 20ms interval
    start = _time.monotonic()
    for _ in range(4):
        limiter.acquire()
    elapsed = _time.monotonic() - start
    assert elapsed >= 3 * 0.02
