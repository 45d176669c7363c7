"""Who may read a patient's data: the patient themselves or their current doctor."""

from __future__ import annotations

from .models import AuthorRole, PatientProfile


def can_read_patient(role: AuthorRole, actor_id: str, patient: PatientProfile) -> bool:
    if role is AuthorRole.PATIENT:
        return actor_id == patient.id
    return patient.doctor_id is not None and actor_id == patient.doctor_id
