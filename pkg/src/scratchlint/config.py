"""Runtime settings: service endpoints, rate limit, worker counts.

Resolution order (later wins): built-in defaults, JSON config file,
SCRATCHLINT_* environment variables, explicit overrides.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class Settings:
    api_base: str = "https://api.scratch.mit.edu"
    project_host: str = "https://projects.scratch.mit.edu"
    rate_limit: float = 1.0  # max outbound requests per second
    jobs: int = 4
    timeout: float = 30.0
    retries: int = 2


_ENV_PREFIX = "SCRATCHLINT_"
_FLOATS = {"rate_limit", "timeout"}
_INTS = {"jobs", "retries"}


def load_settings(
    config_path: str | Path | None = None,
    env: dict[str, str] | None = None,
    **overrides,
) -> Settings:
    settings = Settings()
    if config_path is not None:
        try:
            doc = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ValueError(f"cannot read config file {config_path}: {exc}") from None
        settings = _apply(settings, doc)

    env = os.environ if env is None else env
    env_values = {}
    for f in fields(Settings):
        raw = env.get(_ENV_PREFIX + f.name.upper())
        if raw is not None:
            env_values[f.name] = raw
    settings = _apply(settings, env_values)

    return _apply(settings, {k: v for k, v in overrides.items() if v is not None})


def _apply(settings: Settings, values: dict) -> Settings:
    known = {f.name for f in fields(Settings)}
    converted = {}
    for key, value in values.items():
        if key not in known:
            continue
        if key in _FLOATS:
            value = float(value)
        elif key in _INTS:
            value = int(value)
        converted[key] = value
    return replace(settings, **converted) if converted else settings
