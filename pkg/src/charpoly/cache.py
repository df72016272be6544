"""Disk cache for computed polynomials.

Entries are the canonical JSON serialization of a polynomial under a string
key; writes go through a temp file plus rename so concurrent readers never
see a partial file.  A reloaded polynomial compares equal to the original.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from .polyring import MultiPoly

SCHEMA_VERSION = 1


class PolyCache:
    def __init__(self, directory: str):
        self.directory = directory

    def _path(self, key: str) -> str:
        safe = "".join(ch if ch.isalnum() or ch in "-." else "_" for ch in key)
        digest = hashlib.sha256(key.encode()).hexdigest()[:12]
        return os.path.join(self.directory, f"{safe}-{digest}.json")

    def get(self, key: str) -> MultiPoly | None:
        path = self._path(key)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        if data.get("schema_version") != SCHEMA_VERSION or data.get("key") != key:
            return None
        return MultiPoly.from_json_dict(data["poly"])

    def put(self, key: str, poly: MultiPoly) -> None:
        os.makedirs(self.directory, exist_ok=True)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "key": key,
            "poly": poly.to_json_dict(),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, self._path(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
