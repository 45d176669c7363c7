"""Trigger evaluation and notification fan-out."""

from .dispatch import DeliveryReport, Dispatcher, RetryPolicy, SinkOutcome
from .events import (
    KIND_RECIPIENTS,
    NotificationEvent,
    NotificationKind,
    RecipientRole,
    idempotency_key,
    make_event,
)
from .sinks import (
    FeedSink,
    FeedStore,
    LogFileSink,
    NotificationSink,
    SinkUnavailable,
    WebhookSink,
)
from .triggers import (
    MeasurementAssessments,
    evaluate_entry_triggers,
    evaluate_measurement_triggers,
)

__all__ = [
    "DeliveryReport",
    "Dispatcher",
    "FeedSink",
    "FeedStore",
    "KIND_RECIPIENTS",
    "LogFileSink",
    "MeasurementAssessments",
    "NotificationEvent",
    "NotificationKind",
    "NotificationSink",
    "RecipientRole",
    "RetryPolicy",
    "SinkOutcome",
    "SinkUnavailable",
    "WebhookSink",
    "evaluate_entry_triggers",
    "evaluate_measurement_triggers",
    "idempotency_key",
    "make_event",
]
