"""Diary operations over the document store.

All writes go through the patient's aggregate document, so the store's
per-key locking gives last-writer-wins at record level and readers see
committed aggregates only. The clock is injected; nothing here reads the
system time directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Any, Callable

from ..rules import UrineProteinGrade
from .errors import (
    FutureDate,
    NotLinked,
    UnknownDoctor,
    UnknownPatient,
    UnknownRecord,
    ValidationFailure,
)
from .export import build_rows, render_csv
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
    Sex,
    TestOrder,
    new_id,
)
from .store import BlobStore, JsonStore

RECORD_LISTS = (
    "entries",
    "measurements",
    "prescriptions",
    "dose_events",
    "reports",
    "advice",
    "test_orders",
)

DEFAULT_REPORT_SIZE_CAP = 8 * 1024 * 1024


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _empty_aggregate(profile: dict) -> dict:
    doc: dict[str, Any] = {"profile": profile}
    for name in RECORD_LISTS:
        doc[name] = []
    return doc


@dataclass(frozen=True)
class TimelineItem:
    kind: str
    date: date
    created_at: datetime
    record: Any

    def sort_key(self) -> tuple:
        record_id = getattr(self.record, "id", None) or self.record.get("id", "")
        return (self.date, self.created_at, record_id)


class DiaryService:
    def __init__(
        self,
        store: JsonStore,
        blobs: BlobStore,
        clock: Callable[[], datetime] = utcnow,
        report_size_cap: int = DEFAULT_REPORT_SIZE_CAP,
        feed_reader: Callable[[str], list[dict]] | None = None,
    ):
        self.store = store
        self.blobs = blobs
        self.clock = clock
        self.report_size_cap = report_size_cap
        self.feed_reader = feed_reader

    # -- profiles ----------------------------------------------------------

    def create_doctor(self, name: str, center: str = "", contact: str = "") -> DoctorProfile:
        doctor = DoctorProfile(id=new_id(), name=name, center=center, contact=contact)
        self.store.write(f"doctors/{doctor.id}", doctor.to_dict())
        return doctor

    def create_patient(
        self,
        name: str,
        date_of_birth: date,
        sex: Sex,
        doctor_id: str | None = None,
        history_notes: str = "",
    ) -> PatientProfile:
        if doctor_id is not None:
            self.get_doctor(doctor_id)
        profile = PatientProfile(
            id=new_id(),
            name=name,
            date_of_birth=date_of_birth,
            sex=sex,
            doctor_id=doctor_id,
            history_notes=history_notes,
        )
        self.store.write(f"patients/{profile.id}", _empty_aggregate(profile.to_dict()))
        return profile

    def get_doctor(self, doctor_id: str) -> DoctorProfile:
        data = self.store.read(f"doctors/{doctor_id}")
        if data is None:
            raise UnknownDoctor(doctor_id)
        return DoctorProfile.from_dict(data)

    def get_patient(self, patient_id: str) -> PatientProfile:
        return PatientProfile.from_dict(self._aggregate(patient_id)["profile"])

    def _aggregate(self, patient_id: str) -> dict:
        data = self.store.read(f"patients/{patient_id}")
        if data is None:
            raise UnknownPatient(patient_id)
        return data

    def list_patients_of(self, doctor_id: str) -> list[PatientProfile]:
        self.get_doctor(doctor_id)
        patients = []
        for key in self.store.list_keys("patients"):
            profile = self.get_patient(key)
            if profile.doctor_id == doctor_id:
                patients.append(profile)
        return patients

    def _require_linked(self, doctor_id: str, patient: PatientProfile) -> None:
        self.get_doctor(doctor_id)
        if patient.doctor_id != doctor_id:
            raise NotLinked(f"doctor {doctor_id} is not the doctor of {patient.id}")

    def _mutate(self, patient_id: str, mutate: Callable[[dict], None]) -> dict:
        data = self.store.read(f"patients/{patient_id}")
        if data is None:
            raise UnknownPatient(patient_id)

        def apply(doc: dict) -> dict:
            mutate(doc)
            return doc

        return self.store.update(f"patients/{patient_id}", apply, default=lambda: data)

    # -- diary entries -------------------------------------------------------

    def record_entry(
        self,
        patient_id: str,
        entry_date: date,
        grade: UrineProteinGrade,
        symptoms: str = "",
        author_role: AuthorRole = AuthorRole.PATIENT,
    ) -> DiaryEntry:
        self.get_patient(patient_id)
        now = self.clock()
        if entry_date > now.date():
            raise FutureDate(f"entry date {entry_date} is in the future")
        entry = DiaryEntry(
            id=new_id(),
            patient_id=patient_id,
            date=entry_date,
            grade=grade,
            symptoms=symptoms,
            author_role=author_role,
            created_at=now,
        )

        def apply(doc: dict) -> None:
            kept = [e for e in doc["entries"] if e["date"] != entry.date.isoformat()]
            kept.append(entry.to_dict())
            kept.sort(key=lambda e: e["date"])
            doc["entries"] = kept

        self._mutate(patient_id, apply)
        return entry

    def entries(self, patient_id: str) -> list[DiaryEntry]:
        data = self._aggregate(patient_id)
        return [DiaryEntry.from_dict(e) for e in data["entries"]]

    def entry_sequence(self, patient_id: str) -> list[tuple[date, UrineProteinGrade]]:
        """Date-ordered (date, grade) pairs, ready for relapse scanning."""
        return [(e.date, e.grade) for e in self.entries(patient_id)]

    # -- measurements --------------------------------------------------------

    def record_measurement(
        self,
        doctor_id: str,
        patient_id: str,
        measurement_date: date,
        systolic: int | None = None,
        diastolic: int | None = None,
        height_cm: float | None = None,
        weight_kg: float | None = None,
        comments: str = "",
        onset_category: OnsetCategory | None = None,
    ) -> ClinicalMeasurement:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        if (systolic is None) != (diastolic is None):
            raise ValidationFailure("systolic and diastolic must be given together")
        if measurement_date > self.clock().date():
            raise FutureDate(f"measurement date {measurement_date} is in the future")
        measurement = ClinicalMeasurement(
            id=new_id(),
            patient_id=patient_id,
            date=measurement_date,
            systolic=systolic,
            diastolic=diastolic,
            height_cm=height_cm,
            weight_kg=weight_kg,
            comments=comments,
            created_at=self.clock(),
        )
        if measurement.height_cm is not None and measurement.height_cm <= 0:
            raise ValidationFailure("height must be positive")
        if measurement.weight_kg is not None and measurement.weight_kg <= 0:
            raise ValidationFailure("weight must be positive")

        def apply(doc: dict) -> None:
            doc["measurements"].append(measurement.to_dict())
            if onset_category is not None:
                doc["profile"]["onset_category"] = onset_category.value

        self._mutate(patient_id, apply)
        return measurement

    def measurements(self, patient_id: str) -> list[ClinicalMeasurement]:
        data = self._aggregate(patient_id)
        return [ClinicalMeasurement.from_dict(m) for m in data["measurements"]]

    def set_onset_category(self, doctor_id: str, patient_id: str, category: OnsetCategory) -> PatientProfile:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        doc = self._mutate(
            patient_id, lambda d: d["profile"].__setitem__("onset_category", category.value)
        )
        return PatientProfile.from_dict(doc["profile"])

    def set_history_notes(self, doctor_id: str, patient_id: str, notes: str) -> PatientProfile:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        doc = self._mutate(patient_id, lambda d: d["profile"].__setitem__("history_notes", notes))
        return PatientProfile.from_dict(doc["profile"])

    # -- prescriptions and doses ----------------------------------------------

    def create_prescription(
        self,
        doctor_id: str,
        patient_id: str,
        medicine_name: str,
        category: MedicineCategory,
        dose: float,
        dose_unit: str,
        frequency_per_day: int,
        start: date,
        end: date | None = None,
    ) -> Prescription:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        if end is not None and end < start:
            raise ValidationFailure(f"prescription end {end} before start {start}")
        if frequency_per_day < 1:
            raise ValidationFailure("frequency_per_day must be >= 1")
        prescription = Prescription(
            id=new_id(),
            patient_id=patient_id,
            medicine_name=medicine_name,
            category=category,
            dose=dose,
            dose_unit=dose_unit,
            frequency_per_day=frequency_per_day,
            start=start,
            end=end,
            prescribed_by=doctor_id,
        )
        self._mutate(patient_id, lambda d: d["prescriptions"].append(prescription.to_dict()))
        return prescription

    def update_prescription(
        self,
        doctor_id: str,
        patient_id: str,
        prescription_id: str,
        dose: float | None = None,
        dose_unit: str | None = None,
        frequency_per_day: int | None = None,
        end: date | None = None,
    ) -> Prescription:
        """Adjust dosage or close out a prescription; the category is immutable."""
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        updated: dict[str, Prescription] = {}

        def apply(doc: dict) -> None:
            for raw in doc["prescriptions"]:
                if raw["id"] != prescription_id:
                    continue
                if dose is not None:
                    raw["dose"] = dose
                if dose_unit is not None:
                    raw["dose_unit"] = dose_unit
                if frequency_per_day is not None:
                    if frequency_per_day < 1:
                        raise ValidationFailure("frequency_per_day must be >= 1")
                    raw["frequency_per_day"] = frequency_per_day
                if end is not None:
                    if end < date.fromisoformat(raw["start"]):
                        raise ValidationFailure("prescription end before start")
                    raw["end"] = end.isoformat()
                updated["value"] = Prescription.from_dict(raw)
                return
            raise UnknownRecord(prescription_id)

        self._mutate(patient_id, apply)
        return updated["value"]

    def prescriptions(self, patient_id: str) -> list[Prescription]:
        data = self._aggregate(patient_id)
        return [Prescription.from_dict(p) for p in data["prescriptions"]]

    def record_dose(
        self, patient_id: str, prescription_id: str, dose_date: date, taken: bool
    ) -> DoseEvent:
        self.get_patient(patient_id)
        prescription = next(
            (p for p in self.prescriptions(patient_id) if p.id == prescription_id), None
        )
        if prescription is None:
            raise UnknownRecord(prescription_id)
        if not prescription.active_on(dose_date):
            raise ValidationFailure(
                f"dose date {dose_date} outside prescription validity"
            )
        event = DoseEvent(
            id=new_id(),
            prescription_id=prescription_id,
            date=dose_date,
            taken=taken,
            recorded_at=self.clock(),
        )

        def apply(doc: dict) -> None:
            kept = [
                e
                for e in doc["dose_events"]
                if not (
                    e["prescription_id"] == prescription_id
                    and e["date"] == dose_date.isoformat()
                )
            ]
            kept.append(event.to_dict())
            doc["dose_events"] = kept

        self._mutate(patient_id, apply)
        return event

    def dose_events(self, patient_id: str) -> list[DoseEvent]:
        data = self._aggregate(patient_id)
        return [DoseEvent.from_dict(e) for e in data["dose_events"]]

    # -- reports, advice, tests ---------------------------------------------

    def add_report(self, patient_id: str, data: bytes, media_type: str) -> ReportUpload:
        self.get_patient(patient_id)
        if len(data) > self.report_size_cap:
            raise ValidationFailure(
                f"report of {len(data)} bytes exceeds cap of {self.report_size_cap}"
            )
        ref = self.blobs.put(data)
        report = ReportUpload(
            id=new_id(),
            patient_id=patient_id,
            blob_ref=ref,
            media_type=media_type,
            created_at=self.clock(),
        )
        self._mutate(patient_id, lambda d: d["reports"].append(report.to_dict()))
        return report

    def reports(self, patient_id: str) -> list[ReportUpload]:
        data = self._aggregate(patient_id)
        return [ReportUpload.from_dict(r) for r in data["reports"]]

    def report_content(self, patient_id: str, report_id: str) -> tuple[bytes, str]:
        for report in self.reports(patient_id):
            if report.id == report_id:
                return self.blobs.get(report.blob_ref), report.media_type
        raise UnknownRecord(report_id)

    def add_advice(self, patient_id: str, text: str, author_role: AuthorRole) -> AdviceMessage:
        self.get_patient(patient_id)
        advice = AdviceMessage(
            id=new_id(),
            patient_id=patient_id,
            text=text,
            author_role=author_role,
            created_at=self.clock(),
        )
        self._mutate(patient_id, lambda d: d["advice"].append(advice.to_dict()))
        return advice

    def add_test_order(
        self, doctor_id: str, patient_id: str, tests: list[str], comments: str = ""
    ) -> TestOrder:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        order = TestOrder(
            id=new_id(),
            patient_id=patient_id,
            tests=tests,
            comments=comments,
            created_at=self.clock(),
        )
        self._mutate(patient_id, lambda d: d["test_orders"].append(order.to_dict()))
        return order

    # -- linkage ---------------------------------------------------------------

    def transfer_patient(self, patient_id: str, new_doctor_id: str) -> PatientProfile:
        patient = self.get_patient(patient_id)
        self.get_doctor(new_doctor_id)
        if patient.doctor_id == new_doctor_id:
            return patient  # no-op; verification stands

        def apply(doc: dict) -> None:
            doc["profile"]["doctor_id"] = new_doctor_id
            doc["profile"]["verified"] = False

        doc = self._mutate(patient_id, apply)
        return PatientProfile.from_dict(doc["profile"])

    def verify_patient(self, doctor_id: str, patient_id: str) -> PatientProfile:
        patient = self.get_patient(patient_id)
        self._require_linked(doctor_id, patient)
        doc = self._mutate(patient_id, lambda d: d["profile"].__setitem__("verified", True))
        return PatientProfile.from_dict(doc["profile"])

    # -- timeline and export ----------------------------------------------------

    def timeline(
        self,
        patient_id: str,
        start: date | None = None,
        end: date | None = None,
    ) -> list[TimelineItem]:
        data = self._aggregate(patient_id)
        items: list[TimelineItem] = []
        for raw in data["entries"]:
            entry = DiaryEntry.from_dict(raw)
            items.append(TimelineItem("entry", entry.date, entry.created_at, entry))
        for raw in data["measurements"]:
            m = ClinicalMeasurement.from_dict(raw)
            items.append(TimelineItem("measurement", m.date, m.created_at, m))
        for raw in data["dose_events"]:
            e = DoseEvent.from_dict(raw)
            items.append(TimelineItem("dose_event", e.date, e.recorded_at, e))
        for raw in data["advice"]:
            a = AdviceMessage.from_dict(raw)
            items.append(TimelineItem("advice", a.created_at.date(), a.created_at, a))
        for raw in data["test_orders"]:
            t = TestOrder.from_dict(raw)
            items.append(TimelineItem("test_order", t.created_at.date(), t.created_at, t))
        if self.feed_reader is not None:
            from .models import parse_timestamp

            for event in self.feed_reader(patient_id):
                created = parse_timestamp(event["created_at"])
                items.append(TimelineItem("notification", created.date(), created, event))

        if start is not None:
            items = [i for i in items if i.date >= start]
        if end is not None:
            items = [i for i in items if i.date <= end]
        items.sort(key=TimelineItem.sort_key)
        return items

    def export_csv(self, patient_id: str) -> str:
        data = self._aggregate(patient_id)
        rows = build_rows(
            [DiaryEntry.from_dict(e) for e in data["entries"]],
            [ClinicalMeasurement.from_dict(m) for m in data["measurements"]],
            [Prescription.from_dict(p) for p in data["prescriptions"]],
            [DoseEvent.from_dict(e) for e in data["dose_events"]],
        )
        return render_csv(rows)

    # -- integrity ----------------------------------------------------------------

    def record_counts(self, patient_id: str) -> dict[str, int]:
        data = self._aggregate(patient_id)
        return {name: len(data[name]) for name in RECORD_LISTS}

    def audit_referential_integrity(self) -> list[str]:
        """Scan the whole store; every child record's parent must resolve."""
        problems: list[str] = []
        doctor_ids = set(self.store.list_keys("doctors"))
        for pid in self.store.list_keys("patients"):
            data = self.store.read(f"patients/{pid}")
            profile = data["profile"]
            if profile["doctor_id"] is not None and profile["doctor_id"] not in doctor_ids:
                problems.append(f"patient {pid}: unknown doctor {profile['doctor_id']}")
            if profile["verified"] and profile["doctor_id"] is None:
                problems.append(f"patient {pid}: verified without doctor")
            prescription_ids = {p["id"] for p in data["prescriptions"]}
            for name in RECORD_LISTS:
                for record in data[name]:
                    if record.get("patient_id", pid) != pid:
                        problems.append(f"patient {pid}: foreign record in {name}")
            for event in data["dose_events"]:
                if event["prescription_id"] not in prescription_ids:
                    problems.append(
                        f"patient {pid}: dose event for unknown prescription {event['prescription_id']}"
                    )
            for prescription in data["prescriptions"]:
                if prescription["prescribed_by"] not in doctor_ids:
                    problems.append(
                        f"patient {pid}: prescription by unknown doctor {prescription['prescribed_by']}"
                    )
            for report in data["reports"]:
                if not self.blobs.exists(report["blob_ref"]):
                    problems.append(f"patient {pid}: dangling blob {report['blob_ref']}")
        return problems
