"""Embedded JSON document store with per-document atomic writes.

One JSON file per document under the store root; a document key like
"patients/abc" maps to <root>/patients/abc.json. Writes go through a
temp file and os.replace, serialized per key, so readers only ever see
committed state.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Callable


class JsonStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            lock = self._locks.get(key)
            if lock is None:
                lock = self._locks[key] = threading.Lock()
            return lock

    def _path(self, key: str) -> Path:
        path = (self.root / f"{key}.json").resolve()
        if self.root.resolve() not in path.parents:
            raise ValueError(f"document key escapes store root: {key!r}")
        return path

    def read(self, key: str) -> Any | None:
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None

    def write(self, key: str, document: Any) -> None:
        with self._lock_for(key):
            self._write_unlocked(key, document)

    def _write_unlocked(self, key: str, document: Any) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(document, fh, ensure_ascii=False, indent=1)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def update(
        self,
        key: str,
        mutate: Callable[[Any], Any],
        default: Callable[[], Any] = dict,
    ) -> Any:
        """Read-modify-write under the key's lock; returns the stored document."""
        with self._lock_for(key):
            current = self.read(key)
            if current is None:
                current = default()
            updated = mutate(current)
            if updated is None:
                updated = current
            self._write_unlocked(key, updated)
            return updated

    def exists(self, key: str) -> bool:
        return self._path(key).exists()

    def list_keys(self, prefix: str) -> list[str]:
        directory = self.root / prefix
        if not directory.is_dir():
            return []
        return sorted(p.stem for p in directory.glob("*.json"))


class BlobStore:
    """Content-addressed binary storage: blobs/<first2hex>/<sha256>."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def put(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()
        ref = f"{digest[:2]}/{digest}"
        path = self.root / ref
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(data)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return ref

    def get(self, ref: str) -> bytes:
        path = (self.root / ref).resolve()
        if self.root.resolve() not in path.parents:
            raise ValueError(f"blob ref escapes blob root: {ref!r}")
        with open(path, "rb") as fh:
            return fh.read()

    def exists(self, ref: str) -> bool:
        try:
            path = (self.root / ref).resolve()
        except OSError:
            return False
        return self.root.resolve() in path.parents and path.exists()
