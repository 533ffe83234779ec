"""
On-disk JSON cache for corepresentation and Clebsch-Gordan tables.

The cache only moves JSON payloads; validating what comes back is the
caller's job (hopf.corep re-checks the counit of a corepresentation and the
band rule of a Clebsch-Gordan table before trusting either).
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

CACHE_FORMAT = 1


class TableCache:
    def __init__(self, directory):
        self.directory = Path(directory)

    def _path(self, name: str) -> Path:
        return self.directory / f"{name}.json"

    def load(self, name: str) -> Optional[Dict[str, Any]]:
        path = self._path(name)
        if not path.exists():
            logger.debug("cache miss for %s", name)
            return None
        try:
            with path.open("r", encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, ValueError) as exc:
            logger.warning("ignoring unreadable cache file %s: %s", path, exc)
            return None
        if payload.get("format") != CACHE_FORMAT:
            logger.info("cache file %s has an outdated format, rebuilding", path)
            return None
        logger.debug("cache hit for %s", name)
        return payload["table"]

    def store(self, name: str, table: Dict[str, Any]) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(name)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w", encoding="utf-8") as handle:
            json.dump({"format": CACHE_FORMAT, "table": table}, handle)
        tmp.replace(path)
        logger.info("cached %s at %s", name, path)

    def discard(self, name: str) -> None:
        path = self._path(name)
        if path.exists():
            path.unlink()
            logger.warning("discarded invalid cache file %s", path)


def default_cache() -> Optional[TableCache]:
    """The cache named by QSU2_CACHE_DIR, if Django settings are active and set it."""
    from django.conf import settings

    if not settings.configured:
        return None
    directory = getattr(settings, "QSU2_CACHE_DIR", None)
    return TableCache(directory) if directory else None
