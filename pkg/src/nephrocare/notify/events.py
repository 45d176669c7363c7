"""Notification events and their fixed kind-to-recipient mapping."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from ..diary.models import isoformat_utc, new_id, parse_timestamp


class RecipientRole(Enum):
    PATIENT = "patient"
    DOCTOR = "doctor"
    BOTH = "both"


class NotificationKind(Enum):
    HEAVY_PROTEINURIA = "heavy_proteinuria"
    RELAPSE_DETECTED = "relapse_detected"
    BP_STAGE1 = "bp_stage1"
    BP_STAGE2 = "bp_stage2"
    GROWTH_RED = "growth_red"
    DOCTOR_ADVICE = "doctor_advice"
    TEST_ORDERED = "test_ordered"
    MEDICINE_UPDATED = "medicine_updated"


_KIND_ORDER = {kind: index for index, kind in enumerate(NotificationKind)}

# The recipient side of each kind is fixed: clinical alerts go to both
# parties, doctor-initiated messages go to the patient.
KIND_RECIPIENTS: dict[NotificationKind, RecipientRole] = {
    NotificationKind.HEAVY_PROTEINURIA: RecipientRole.BOTH,
    NotificationKind.RELAPSE_DETECTED: RecipientRole.BOTH,
    NotificationKind.BP_STAGE1: RecipientRole.BOTH,
    NotificationKind.BP_STAGE2: RecipientRole.BOTH,
    NotificationKind.GROWTH_RED: RecipientRole.BOTH,
    NotificationKind.DOCTOR_ADVICE: RecipientRole.PATIENT,
    NotificationKind.TEST_ORDERED: RecipientRole.PATIENT,
    NotificationKind.MEDICINE_UPDATED: RecipientRole.PATIENT,
}


def idempotency_key(patient_id: str, kind: NotificationKind, source_id: str) -> str:
    material = f"{patient_id}:{kind.value}:{source_id}".encode()
    return hashlib.sha256(material).hexdigest()


@dataclass(frozen=True)
class NotificationEvent:
    id: str
    idempotency_key: str
    patient_id: str
    recipient_role: RecipientRole
    kind: NotificationKind
    body: str
    created_at: datetime

    def kind_order(self) -> int:
        return _KIND_ORDER[self.kind]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "idempotency_key": self.idempotency_key,
            "patient_id": self.patient_id,
            "recipient_role": self.recipient_role.value,
            "kind": self.kind.value,
            "body": self.body,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NotificationEvent":
        return cls(
            id=data["id"],
            idempotency_key=data["idempotency_key"],
            patient_id=data["patient_id"],
            recipient_role=RecipientRole(data["recipient_role"]),
            kind=NotificationKind(data["kind"]),
            body=data["body"],
            created_at=parse_timestamp(data["created_at"]),
        )


def make_event(
    patient_id: str,
    kind: NotificationKind,
    source_id: str,
    body: str,
    created_at: datetime,
    key: str | None = None,
) -> NotificationEvent:
    """Build an event; the idempotency key hashes (patient, kind, source record)."""
    return NotificationEvent(
        id=new_id(),
        idempotency_key=key or idempotency_key(patient_id, kind, source_id),
        patient_id=patient_id,
        recipient_role=KIND_RECIPIENTS[kind],
        kind=kind,
        body=body,
        created_at=created_at,
    )
