"""Domain records for the digital diary.

Every record serializes to a flat JSON dict; dates are ISO "YYYY-MM-DD"
and timestamps are UTC ISO-8601 with seconds precision. BMI is never a
stored field: it is derived from height and weight on read.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from enum import Enum

from ..rules import Sex, UrineProteinGrade, compute_bmi, round_display


class AuthorRole(Enum):
    PATIENT = "patient"
    DOCTOR = "doctor"


class OnsetCategory(Enum):
    SSNS = "SSNS"
    SRNS_IR = "SRNS_IR"
    SRNS_LR = "SRNS_LR"
    UNASSIGNED = "Unassigned"


class MedicineCategory(Enum):
    STEROID = "steroid"
    OTHER = "other"


def new_id() -> str:
    """128-bit random identifier rendered lowercase-hex."""
    return uuid.uuid4().hex


def isoformat_utc(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).replace(microsecond=0).isoformat()


def parse_timestamp(text: str) -> datetime:
    return datetime.fromisoformat(text)


@dataclass
class PatientProfile:
    id: str
    name: str
    date_of_birth: date
    sex: Sex
    onset_category: OnsetCategory = OnsetCategory.UNASSIGNED
    doctor_id: str | None = None
    verified: bool = False
    history_notes: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "date_of_birth": self.date_of_birth.isoformat(),
            "sex": self.sex.value,
            "onset_category": self.onset_category.value,
            "doctor_id": self.doctor_id,
            "verified": self.verified,
            "history_notes": self.history_notes,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PatientProfile":
        return cls(
            id=data["id"],
            name=data["name"],
            date_of_birth=date.fromisoformat(data["date_of_birth"]),
            sex=Sex(data["sex"]),
            onset_category=OnsetCategory(data["onset_category"]),
            doctor_id=data["doctor_id"],
            verified=data["verified"],
            history_notes=data["history_notes"],
        )

    def age_months_on(self, day: date) -> int:
        """Completed months of age on the given day."""
        months = (day.year - self.date_of_birth.year) * 12 + (
            day.month - self.date_of_birth.month
        )
        if day.day < self.date_of_birth.day:
            months -= 1
        return months


@dataclass
class DoctorProfile:
    id: str
    name: str
    center: str = ""
    contact: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "center": self.center, "contact": self.contact}

    @classmethod
    def from_dict(cls, data: dict) -> "DoctorProfile":
        return cls(id=data["id"], name=data["name"], center=data["center"], contact=data["contact"])


@dataclass
class DiaryEntry:
    id: str
    patient_id: str
    date: date
    grade: UrineProteinGrade
    symptoms: str
    author_role: AuthorRole
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "date": self.date.isoformat(),
            "grade": self.grade.label,
            "symptoms": self.symptoms,
            "author_role": self.author_role.value,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiaryEntry":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            date=date.fromisoformat(data["date"]),
            grade=UrineProteinGrade.from_label(data["grade"]),
            symptoms=data["symptoms"],
            author_role=AuthorRole(data["author_role"]),
            created_at=parse_timestamp(data["created_at"]),
        )


@dataclass
class ClinicalMeasurement:
    id: str
    patient_id: str
    date: date
    systolic: int | None = None
    diastolic: int | None = None
    height_cm: float | None = None
    weight_kg: float | None = None
    comments: str = ""
    created_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    # measurements are physician-entered
    author_role: AuthorRole = AuthorRole.DOCTOR

    @property
    def bmi(self) -> float | None:
        """Derived on read; never persisted."""
        if self.height_cm is None or self.weight_kg is None:
            return None
        return compute_bmi(self.weight_kg, self.height_cm)

    @property
    def bmi_display(self) -> float | None:
        bmi = self.bmi
        return None if bmi is None else round_display(bmi)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "date": self.date.isoformat(),
            "systolic": self.systolic,
            "diastolic": self.diastolic,
            "height_cm": self.height_cm,
            "weight_kg": self.weight_kg,
            "comments": self.comments,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClinicalMeasurement":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            date=date.fromisoformat(data["date"]),
            systolic=data["systolic"],
            diastolic=data["diastolic"],
            height_cm=data["height_cm"],
            weight_kg=data["weight_kg"],
            comments=data["comments"],
            created_at=parse_timestamp(data["created_at"]),
        )


@dataclass
class Prescription:
    id: str
    patient_id: str
    medicine_name: str
    category: MedicineCategory
    dose: float
    dose_unit: str
    frequency_per_day: int
    start: date
    end: date | None
    prescribed_by: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "medicine_name": self.medicine_name,
            "category": self.category.value,
            "dose": self.dose,
            "dose_unit": self.dose_unit,
            "frequency_per_day": self.frequency_per_day,
            "start": self.start.isoformat(),
            "end": self.end.isoformat() if self.end else None,
            "prescribed_by": self.prescribed_by,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Prescription":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            medicine_name=data["medicine_name"],
            category=MedicineCategory(data["category"]),
            dose=data["dose"],
            dose_unit=data["dose_unit"],
            frequency_per_day=data["frequency_per_day"],
            start=date.fromisoformat(data["start"]),
            end=date.fromisoformat(data["end"]) if data["end"] else None,
            prescribed_by=data["prescribed_by"],
        )

    def active_on(self, day: date) -> bool:
        if day < self.start:
            return False
        return self.end is None or day <= self.end


@dataclass
class DoseEvent:
    id: str
    prescription_id: str
    date: date
    taken: bool
    recorded_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "prescription_id": self.prescription_id,
            "date": self.date.isoformat(),
            "taken": self.taken,
            "recorded_at": isoformat_utc(self.recorded_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DoseEvent":
        return cls(
            id=data["id"],
            prescription_id=data["prescription_id"],
            date=date.fromisoformat(data["date"]),
            taken=data["taken"],
            recorded_at=parse_timestamp(data["recorded_at"]),
        )


@dataclass
class ReportUpload:
    id: str
    patient_id: str
    blob_ref: str
    media_type: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "blob_ref": self.blob_ref,
            "media_type": self.media_type,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportUpload":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            blob_ref=data["blob_ref"],
            media_type=data["media_type"],
            created_at=parse_timestamp(data["created_at"]),
        )


@dataclass
class AdviceMessage:
    id: str
    patient_id: str
    text: str
    author_role: AuthorRole
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "text": self.text,
            "author_role": self.author_role.value,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AdviceMessage":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            text=data["text"],
            author_role=AuthorRole(data["author_role"]),
            created_at=parse_timestamp(data["created_at"]),
        )


@dataclass
class TestOrder:
    id: str
    patient_id: str
    tests: list[str]
    comments: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "patient_id": self.patient_id,
            "tests": list(self.tests),
            "comments": self.comments,
            "created_at": isoformat_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TestOrder":
        return cls(
            id=data["id"],
            patient_id=data["patient_id"],
            tests=list(data["tests"]),
            comments=data["comments"],
            created_at=parse_timestamp(data["created_at"]),
        )
