"""Request bodies. Field names are snake_case; dates are ISO strings."""

from __future__ import annotations

from datetime import date

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..diary.models import MedicineCategory, OnsetCategory
from ..rules import Sex, UrineProteinGrade


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _parse_sex(value: str | Sex) -> Sex:
    if isinstance(value, Sex):
        return value
    try:
        return Sex(value)
    except ValueError:
        raise ValueError("sex must be 'F' or 'M'") from None


class PatientRegistration(StrictModel):
    name: str = Field(min_length=1)
    date_of_birth: date
    sex: Sex
    email: str = Field(pattern=r".+@.+")
    password: str = Field(min_length=6)
    doctor_id: str | None = None
    history_notes: str = ""

    _sex = field_validator("sex", mode="before")(_parse_sex)


class DoctorRegistration(StrictModel):
    name: str = Field(min_length=1)
    center: str = ""
    contact: str = ""
    email: str = Field(pattern=r".+@.+")
    password: str = Field(min_length=6)


class LoginRequest(StrictModel):
    email: str
    password: str


class OtpRequest(StrictModel):
    email: str


class OtpVerify(StrictModel):
    email: str
    code: str


class EntryBody(StrictModel):
    date: date
    grade: UrineProteinGrade
    symptoms: str = ""

    @field_validator("grade", mode="before")
    @classmethod
    def _parse_grade(cls, value):
        if isinstance(value, UrineProteinGrade):
            return value
        try:
            return UrineProteinGrade.from_label(str(value))
        except Exception:
            raise ValueError(
                "grade must be one of: negative, trace, 1+, 2+, 3+, 4+"
            ) from None


class MeasurementBody(StrictModel):
    date: date
    systolic: int | None = Field(default=None, gt=0)
    diastolic: int | None = Field(default=None, gt=0)
    height_cm: float | None = Field(default=None, gt=0)
    weight_kg: float | None = Field(default=None, gt=0)
    comments: str = ""
    onset_category: OnsetCategory | None = None

    @field_validator("onset_category", mode="before")
    @classmethod
    def _parse_category(cls, value):
        if value is None or isinstance(value, OnsetCategory):
            return value
        try:
            return OnsetCategory(value)
        except ValueError:
            raise ValueError(
                "onset_category must be one of: SSNS, SRNS_IR, SRNS_LR, Unassigned"
            ) from None


class PrescriptionBody(StrictModel):
    medicine_name: str = Field(min_length=1)
    category: MedicineCategory
    dose: float = Field(gt=0)
    dose_unit: str = Field(min_length=1)
    frequency_per_day: int = Field(ge=1)
    start: date
    end: date | None = None

    @field_validator("category", mode="before")
    @classmethod
    def _parse_med_category(cls, value):
        if isinstance(value, MedicineCategory):
            return value
        try:
            return MedicineCategory(str(value).lower())
        except ValueError:
            raise ValueError("category must be 'steroid' or 'other'") from None


class PrescriptionUpdate(StrictModel):
    dose: float | None = Field(default=None, gt=0)
    dose_unit: str | None = None
    frequency_per_day: int | None = Field(default=None, ge=1)
    end: date | None = None


class DoseBody(StrictModel):
    prescription_id: str
    date: date
    taken: bool


class ReportBody(StrictModel):
    media_type: str = Field(pattern=r"^(image|application)/[\w.+-]+$")
    content_base64: str = Field(min_length=1)


class AdviceBody(StrictModel):
    text: str = Field(min_length=1)


class TestOrderBody(StrictModel):
    tests: list[str] = Field(min_length=1)
    comments: str = ""


class NotifyBody(StrictModel):
    body: str = Field(min_length=1)
    idempotency_key: str | None = None


class TransferBody(StrictModel):
    new_doctor_id: str


class PatientPatch(StrictModel):
    history_notes: str | None = None
