"""Append-only on-disk memo cache (newline-delimited JSON).

The directory comes from ``GRASSCALC_CACHE_DIR``; without it nothing is
persisted.  Every line is ``{"key": ..., "value": ...}``.  Unreadable lines are
skipped with a warning, duplicate keys are harmless, so concurrent appends
from several processes never corrupt results.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Any

log = logging.getLogger(__name__)

ENV_VAR = "GRASSCALC_CACHE_DIR"
FILENAME = "memo.ndjson"

_enabled = True
_instances: dict[str, "DiskCache"] = {}


class DiskCache:
    def __init__(self, directory: str | os.PathLike):
        self.path = Path(directory) / FILENAME
        self._data: dict[str, Any] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    self._data[str(entry["key"])] = entry["value"]
                except (ValueError, KeyError, TypeError):
                    log.warning("skipping corrupt cache line %d in %s", lineno, self.path)

    def get(self, key: str, default=None):
        return self._data.get(key, default)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def put(self, key: str, value) -> None:
        if key in self._data:
            return
        self._data[key] = value
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps({"key": key, "value": value}, sort_keys=True, separators=(",", ":"))
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def __len__(self) -> int:
        return len(self._data)


def set_enabled(flag: bool) -> None:
    global _enabled
    _enabled = flag


def active_cache() -> DiskCache | None:
    """The cache for the current ``GRASSCALC_CACHE_DIR``, or None."""
    if not _enabled:
        return None
    directory = os.environ.get(ENV_VAR)
    if not directory:
        return None
    if directory not in _instances:
        _instances[directory] = DiskCache(directory)
    return _instances[directory]


def reset() -> None:
    """Forget loaded caches (files are left alone)."""
    _instances.clear()
