"""Digital diary: domain records, embedded persistence, timeline and CSV export."""

from .access import can_read_patient
from .errors import (
    DiaryError,
    FutureDate,
    NotLinked,
    UnknownDoctor,
    UnknownPatient,
    UnknownRecord,
    ValidationFailure,
)
from .export import EXPORT_HEADER, build_rows, parse_csv, render_csv
from .models import (
    AdviceMessage,
    AuthorRole,
    ClinicalMeasurement,
    DiaryEntry,
    DoctorProfile,
    DoseEvent,
    MedicineCategory,
    OnsetCategory,
    PatientProfile,
    Prescription,
    ReportUpload,
    TestOrder,
    new_id,
)
from .service import DiaryService, TimelineItem, utcnow
from .store import BlobStore, JsonStore

__all__ = [
    "AdviceMessage",
    "AuthorRole",
    "BlobStore",
    "ClinicalMeasurement",
    "DiaryEntry",
    "DiaryError",
    "DiaryService",
    "DoctorProfile",
    "DoseEvent",
    "EXPORT_HEADER",
    "FutureDate",
    "JsonStore",
    "MedicineCategory",
    "NotLinked",
    "OnsetCategory",
    "PatientProfile",
    "Prescription",
    "ReportUpload",
    "TestOrder",
    "TimelineItem",
    "UnknownDoctor",
    "UnknownPatient",
    "UnknownRecord",
    "ValidationFailure",
    "build_rows",
    "can_read_patient",
    "new_id",
    "parse_csv",
    "render_csv",
    "utcnow",
]
