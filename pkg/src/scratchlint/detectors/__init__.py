"""Bug-pattern detectors and their registry.

Importing this package registers the full catalogue: 7 syntax-error
detectors, 13 general-bug detectors, and 5 Scratch-specific detectors.
"""

from .common import Finding
from .registry import (
    CATEGORIES,
    DetectorDescriptor,
    UnknownDetectorError,
    detector,
    list_detectors,
    run,
)

from . import syntax as _syntax  # noqa: F401  (registration side effect)
from . import general as _general  # noqa: F401
from . import scratch as _scratch  # noqa: F401

__all__ = [
    "CATEGORIES",
    "DetectorDescriptor",
    "Finding",
    "UnknownDetectorError",
    "detector",
    "list_detectors",
    "run",
]
