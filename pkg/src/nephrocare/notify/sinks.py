"""Delivery sinks: persistent in-app feed, webhook POST, append-only log.

Every sink tolerates redelivery of the same idempotency key; the feed
deduplicates, the others append/POST at-least-once.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Callable, Protocol

import requests

from ..diary.store import JsonStore
from .events import NotificationEvent, RecipientRole


class SinkUnavailable(Exception):
    """A sink failed to acknowledge delivery; recorded, never propagated."""


class NotificationSink(Protocol):
    name: str

    def deliver(self, event: NotificationEvent) -> None:
        """Deliver one event; raise SinkUnavailable on failure."""


class FeedStore:
    """Per-principal notification feeds, persisted in the document store."""

    def __init__(self, store: JsonStore):
        self.store = store

    def append(self, principal_id: str, event: NotificationEvent) -> bool:
        """Idempotent insert; returns False when the key was already present."""
        added = {"value": False}

        def apply(doc: dict) -> dict:
            events = doc.setdefault("events", [])
            if any(e["idempotency_key"] == event.idempotency_key for e in events):
                return doc
            events.append(event.to_dict())
            added["value"] = True
            return doc

        self.store.update(f"feeds/{principal_id}", apply)
        return added["value"]

    def list_events(self, principal_id: str) -> list[dict]:
        doc = self.store.read(f"feeds/{principal_id}")
        if doc is None:
            return []
        return list(doc.get("events", []))


class FeedSink:
    """Routes events into the recipient feeds.

    Patient-directed events land in the patient's feed; doctor-directed
    events in the feed of the patient's current doctor, when linked.
    """

    name = "feed"

    def __init__(self, feed: FeedStore, doctor_of: Callable[[str], str | None]):
        self.feed = feed
        self.doctor_of = doctor_of

    def deliver(self, event: NotificationEvent) -> None:
        if event.recipient_role in (RecipientRole.PATIENT, RecipientRole.BOTH):
            self.feed.append(event.patient_id, event)
        if event.recipient_role in (RecipientRole.DOCTOR, RecipientRole.BOTH):
            doctor_id = self.doctor_of(event.patient_id)
            if doctor_id is not None:
                self.feed.append(doctor_id, event)


class WebhookSink:
    """POSTs the event as JSON; any non-2xx response is a failed delivery."""

    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout
        self.name = f"webhook:{url}"

    def deliver(self, event: NotificationEvent) -> None:
        try:
            response = requests.post(self.url, json=event.to_dict(), timeout=self.timeout)
        except requests.RequestException as exc:
            raise SinkUnavailable(f"POST {self.url}: {exc}") from exc
        if not 200 <= response.status_code < 300:
            raise SinkUnavailable(f"POST {self.url}: HTTP {response.status_code}")


class LogFileSink:
    """Appends one JSON object per line."""

    name = "log"

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def deliver(self, event: NotificationEvent) -> None:
        line = json.dumps(event.to_dict(), ensure_ascii=False, sort_keys=True)
        try:
            with self._lock:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
        except OSError as exc:
            raise SinkUnavailable(f"append {self.path}: {exc}") from exc
