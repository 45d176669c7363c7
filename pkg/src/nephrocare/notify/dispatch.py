"""Fan-out of events to sinks with bounded retries.

Sink failures are captured in the delivery report; dispatch never raises.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .events import NotificationEvent
from .sinks import NotificationSink, SinkUnavailable


@dataclass(frozen=True)
class RetryPolicy:
    """At-least-once delivery: up to `attempts` tries per sink, with
    exponential backoff between them."""

    attempts: int = 3
    base_delay: float = 1.0
    multiplier: float = 2.0

    def delay_before(self, attempt: int) -> float:
        """Seconds to wait before the given retry (attempt 2 is the first retry)."""
        return self.base_delay * self.multiplier ** (attempt - 2)


@dataclass(frozen=True)
class SinkOutcome:
    event_id: str
    idempotency_key: str
    sink: str
    ok: bool
    attempts: int
    error: str | None = None


@dataclass
class DeliveryReport:
    outcomes: list[SinkOutcome] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(outcome.ok for outcome in self.outcomes)

    def failures(self) -> list[SinkOutcome]:
        return [outcome for outcome in self.outcomes if not outcome.ok]


class Dispatcher:
    def __init__(
        self,
        sinks: Sequence[NotificationSink],
        retry: RetryPolicy = RetryPolicy(),
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.sinks = list(sinks)
        self.retry = retry
        self.sleep = sleep

    def dispatch(self, events: Sequence[NotificationEvent]) -> DeliveryReport:
        """Deliver every event to every sink; one outcome cell per pair."""
        report = DeliveryReport()
        for event in events:
            for sink in self.sinks:
                report.outcomes.append(self._deliver_with_retry(event, sink))
        return report

    def _deliver_with_retry(
        self, event: NotificationEvent, sink: NotificationSink
    ) -> SinkOutcome:
        error = None
        for attempt in range(1, self.retry.attempts + 1):
            if attempt > 1:
                self.sleep(self.retry.delay_before(attempt))
            try:
                sink.deliver(event)
                return SinkOutcome(
                    event_id=event.id,
                    idempotency_key=event.idempotency_key,
                    sink=sink.name,
                    ok=True,
                    attempts=attempt,
                )
            except SinkUnavailable as exc:
                error = str(exc)
        return SinkOutcome(
            event_id=event.id,
            idempotency_key=event.idempotency_key,
            sink=sink.name,
            ok=False,
            attempts=self.retry.attempts,
            error=error,
        )
