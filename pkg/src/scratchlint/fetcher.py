"""Downloads projects and metadata from the Scratch web services.

Builds local corpora for analysis: metadata lookups (for remix exclusion),
polite rate-limited project downloads, and an append-only JSON-lines
manifest that makes corpus builds resumable and replayable.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import requests

from .config import Settings
from .model import ProjectLoadError, load_project

MANIFEST_NAME = "manifest.jsonl"

STATUS_OK = "ok"
STATUS_SKIPPED_REMIX = "skipped-remix"
STATUS_FAILED = "failed"

# Spacing margin so observed inter-arrival times never dip below the
# configured interval due to scheduling jitter.
_PACING_GUARD = 0.01


class FetchError(Exception):
    """Base class for download failures."""


class ProjectNotFoundError(FetchError):
    def __init__(self, project_id: int):
        self.project_id = project_id
        super().__init__(f"project {project_id} not found")


class RateLimitedError(FetchError):
    def __init__(self, retry_after: float):
        self.retry_after = retry_after
        super().__init__(f"rate limited; retry after {retry_after}s")


class TransportError(FetchError):
    pass


class MalformedDownloadError(FetchError):
    """Downloaded bytes do not parse as a Scratch 3 project."""

    def __init__(self, project_id: int, path: Path, reason: str):
        self.project_id = project_id
        self.path = path
        super().__init__(f"project {project_id}: downloaded file is unusable ({reason})")


@dataclass(frozen=True)
class ProjectMeta:
    project_id: int
    title: str
    remix_parent: int | None
    author: dict
    fetched_at: str


@dataclass(frozen=True)
class ManifestEntry:
    project_id: int
    status: str
    path: str | None = None
    checksum: str | None = None
    timestamp: str = ""
    error: str | None = None
    remix_parent: int | None = None


@dataclass
class CorpusManifest:
    path: Path
    entries: dict[int, ManifestEntry]

    def ok_entries(self) -> list[ManifestEntry]:
        return [e for e in self.entries.values() if e.status == STATUS_OK]

    def project_paths(self) -> list[Path]:
        return [Path(e.path) for e in self.ok_entries() if e.path]


class RateLimiter:
    """Serializes request starts so they are at least an interval apart."""

    def __init__(self, rate_per_second: float):
        self.interval = 1.0 / rate_per_second if rate_per_second > 0 else 0.0
        self._lock = threading.Lock()
        self._next_slot = 0.0

    def acquire(self) -> None:
        if self.interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            wait = self._next_slot - now
            start = max(now, self._next_slot)
            self._next_slot = start + self.interval + _PACING_GUARD
        if wait > 0:
            time.sleep(wait)


class Fetcher:
    """HTTP client for the metadata API and the project host."""

    def __init__(self, settings: Settings | None = None, session: requests.Session | None = None):
        self.settings = settings or Settings()
        self.session = session or requests.Session()
        self.limiter = RateLimiter(self.settings.rate_limit)

    # -- raw requests -------------------------------------------------------

    def _get(self, url: str) -> requests.Response:
        attempts = self.settings.retries + 1
        last_retry_after = 1.0
        for attempt in range(attempts):
            self.limiter.acquire()
            try:
                response = self.session.get(url, timeout=self.settings.timeout)
            except requests.RequestException as exc:
                raise TransportError(f"GET {url} failed: {exc}") from None
            if response.status_code == 429:
                last_retry_after = _retry_after_seconds(response)
                if attempt < attempts - 1:
                    time.sleep(last_retry_after)
                    continue
                raise RateLimitedError(last_retry_after)
            return response
        raise RateLimitedError(last_retry_after)

    # -- operations ----------------------------------------------------------

    def fetch_meta(self, project_id: int) -> ProjectMeta:
        """Fetch title/author/remix metadata for one project id."""
        _check_id(project_id)
        response = self._get(f"{self.settings.api_base}/projects/{project_id}")
        if response.status_code == 404:
            raise ProjectNotFoundError(project_id)
        if response.status_code != 200:
            raise TransportError(f"metadata request returned HTTP {response.status_code}")
        try:
            doc = response.json()
        except ValueError as exc:
            raise TransportError(f"metadata is not JSON: {exc}") from None
        remix = doc.get("remix") or {}
        parent = remix.get("parent")
        return ProjectMeta(
            project_id=project_id,
            title=str(doc.get("title", "")),
            remix_parent=int(parent) if parent is not None else None,
            author=doc.get("author") or {},
            fetched_at=_now(),
        )

    def fetch_project(self, project_id: int, dest: str | Path) -> Path:
        """Download one project.json into dest as <id>.json (atomically).

        An unparseable download is kept beside the target with a .bad
        suffix for triage and raises MalformedDownloadError.
        """
        _check_id(project_id)
        dest = Path(dest)
        dest.mkdir(parents=True, exist_ok=True)
        response = self._get(f"{self.settings.project_host}/{project_id}")
        if response.status_code == 404:
            raise ProjectNotFoundError(project_id)
        if response.status_code != 200:
            raise TransportError(f"project request returned HTTP {response.status_code}")

        target = dest / f"{project_id}.json"
        try:
            load_project(response.content, kind="json")
        except ProjectLoadError as exc:
            bad = target.with_suffix(".json.bad")
            bad.write_bytes(response.content)
            raise MalformedDownloadError(project_id, bad, str(exc)) from None

        tmp = target.with_suffix(".json.part")
        tmp.write_bytes(response.content)
        tmp.replace(target)
        return target


def _check_id(project_id: int) -> None:
    if not isinstance(project_id, int) or project_id <= 0:
        raise ValueError(f"project id must be a positive integer, got {project_id!r}")


def _retry_after_seconds(response: requests.Response) -> float:
    try:
        return max(0.0, float(response.headers.get("Retry-After", "1")))
    except ValueError:
        return 1.0


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _checksum(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_manifest(path: str | Path) -> CorpusManifest:
    """Read a manifest file; later records for an id supersede earlier ones."""
    path = Path(path)
    entries: dict[int, ManifestEntry] = {}
    if path.exists():
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                entry = ManifestEntry(
                    project_id=int(doc["id"]),
                    status=str(doc["status"]),
                    path=doc.get("path"),
                    checksum=doc.get("checksum"),
                    timestamp=str(doc.get("timestamp", "")),
                    error=doc.get("error"),
                    remix_parent=doc.get("remix_parent"),
                )
            except (ValueError, KeyError, TypeError):
                continue  # skip corrupt lines rather than losing the manifest
            entries[entry.project_id] = entry
    return CorpusManifest(path=path, entries=entries)


class _ManifestWriter:
    """Single-writer append log; workers hand results to it via a lock."""

    def __init__(self, manifest: CorpusManifest):
        self.manifest = manifest
        self._lock = threading.Lock()

    def record(self, entry: ManifestEntry) -> None:
        doc = {
            "id": entry.project_id,
            "status": entry.status,
            "path": entry.path,
            "checksum": entry.checksum,
            "timestamp": entry.timestamp,
        }
        if entry.error is not None:
            doc["error"] = entry.error
        if entry.remix_parent is not None:
            doc["remix_parent"] = entry.remix_parent
        line = json.dumps(doc) + "\n"
        with self._lock:
            with self.manifest.path.open("a", encoding="utf-8") as fh:
                fh.write(line)
            self.manifest.entries[entry.project_id] = entry


def build_corpus(
    ids: list[int],
    dest: str | Path,
    settings: Settings | None = None,
    *,
    exclude_remixes: bool = False,
    concurrency: int | None = None,
    fetcher: Fetcher | None = None,
) -> CorpusManifest:
    """Fetch a list of project ids into dest, maintaining a resumable manifest.

    Per-id failures are recorded, never raised. Entries already ok in the
    manifest (file present, checksum matching) are skipped without network
    traffic; previously failed or missing entries are retried.
    """
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    fetcher = fetcher or Fetcher(settings)
    manifest = load_manifest(dest / MANIFEST_NAME)
    writer = _ManifestWriter(manifest)

    def current(project_id: int) -> ManifestEntry | None:
        entry = manifest.entries.get(project_id)
        if entry is None:
            return None
        if entry.status == STATUS_OK:
            if entry.path and Path(entry.path).exists() and _checksum(Path(entry.path)) == entry.checksum:
                return entry
            return None  # file vanished or changed; re-fetch
        if entry.status == STATUS_SKIPPED_REMIX:
            return entry
        return None

    def work(project_id: int) -> ManifestEntry | None:
        kept = current(project_id)
        if kept is not None:
            return None
        try:
            remix_parent = None
            if exclude_remixes:
                meta = fetcher.fetch_meta(project_id)
                remix_parent = meta.remix_parent
                if remix_parent is not None:
                    return ManifestEntry(
                        project_id=project_id,
                        status=STATUS_SKIPPED_REMIX,
                        timestamp=_now(),
                        remix_parent=remix_parent,
                    )
            path = fetcher.fetch_project(project_id, dest)
            return ManifestEntry(
                project_id=project_id,
                status=STATUS_OK,
                path=str(path),
                checksum=_checksum(path),
                timestamp=_now(),
            )
        except (FetchError, ValueError) as exc:
            return ManifestEntry(
                project_id=project_id,
                status=STATUS_FAILED,
                timestamp=_now(),
                error=str(exc),
            )

    workers = concurrency or (settings.jobs if settings else fetcher.settings.jobs)
    unique_ids = list(dict.fromkeys(ids))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for entry in pool.map(work, unique_ids):
            if entry is not None:
                writer.record(entry)
    return manifest
