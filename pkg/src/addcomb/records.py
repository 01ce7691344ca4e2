"""Append-only JSON-lines record store for scan results.

Every line carries a schema_version.  A corrupt trailing line (an
interrupted write) is tolerated: reads stop at the last good line and the
next append truncates the tail before continuing.  Corruption anywhere
else is an error.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

SCHEMA_VERSION = 1


class RecordStore:
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)

    def _scan(self) -> tuple[list[dict], int]:
        """All good records plus the byte offset where they end."""
        if not self.path.exists():
            return [], 0
        raw = self.path.read_bytes()
        records: list[dict] = []
        good_end = 0
        pos = 0
        while pos < len(raw):
            nl = raw.find(b"\n", pos)
            next_pos = len(raw) if nl == -1 else nl + 1
            stripped = raw[pos : next_pos if nl == -1 else nl].strip()
            if stripped:
                try:
                    parsed = json.loads(stripped)
                    if not isinstance(parsed, dict):
                        raise json.JSONDecodeError("not an object", "", 0)
                except json.JSONDecodeError:
                    if raw[next_pos:].strip():
                        raise ValueError(
                            f"corrupt record mid-file in {self.path} at byte {pos}"
                        ) from None
                    return records, good_end  # tolerated trailing corruption
                records.append(parsed)
                good_end = next_pos
            else:
                good_end = next_pos
            pos = next_pos
        return records, good_end

    def read_all(self) -> list[dict]:
        return self._scan()[0]

    def append(self, record: dict) -> None:
        _, good_end = self._scan()
        payload = dict(record)
        payload.setdefault("schema_version", SCHEMA_VERSION)
        line = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        if self.path.exists() and self.path.stat().st_size > good_end:
            with open(self.path, "r+b") as fh:
                fh.truncate(good_end)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "ab") as fh:
            fh.write(line.encode())
            fh.flush()
            os.fsync(fh.fileno())

    def last_checkpoint(self, config_key: str) -> dict | None:
        """Most recent checkpoint record matching the given config key."""
        found = None
        for record in self.read_all():
            if record.get("type") == "checkpoint" and record.get("config_key") == config_key:
                found = record
        return found
