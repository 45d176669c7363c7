"""Deterministic CSV export of a patient's diary.

One row per day that has any timeline item. RFC-4180 framing: comma
separated, CRLF line endings, minimal quoting, UTF-8. Exporting the same
store state twice yields byte-identical documents.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from datetime import date

from .models import ClinicalMeasurement, DiaryEntry, DoseEvent, Prescription

EXPORT_HEADER = [
    "date",
    "urine_protein",
    "symptoms",
    "systolic",
    "diastolic",
    "height_cm",
    "weight_kg",
    "bmi",
    "medicines_taken",
    "medicines_due",
    "notes",
]


def _format_number(value: float | int | None) -> str:
    if value is None:
        return ""
    as_float = float(value)
    if as_float.is_integer():
        return str(int(as_float))
    return str(as_float)


def build_rows(
    entries: list[DiaryEntry],
    measurements: list[ClinicalMeasurement],
    prescriptions: list[Prescription],
    dose_events: list[DoseEvent],
) -> list[list[str]]:
    """Assemble one export row per day carrying any data."""
    entry_by_day: dict[date, DiaryEntry] = {e.date: e for e in entries}
    measurement_by_day: dict[date, ClinicalMeasurement] = {}
    for m in sorted(measurements, key=lambda m: (m.created_at, m.id)):
        measurement_by_day[m.date] = m  # latest write wins for the day

    by_prescription = {p.id: p for p in prescriptions}
    ticks_by_day: dict[date, set[str]] = defaultdict(set)
    dose_days: set[date] = set()
    for event in dose_events:
        dose_days.add(event.date)
        if event.taken and event.prescription_id in by_prescription:
            ticks_by_day[event.date].add(event.prescription_id)

    days = sorted(set(entry_by_day) | set(measurement_by_day) | dose_days)
    rows = []
    for day in days:
        entry = entry_by_day.get(day)
        measurement = measurement_by_day.get(day)
        due = [p for p in prescriptions if p.active_on(day)]
        taken = sum(1 for p in due if p.id in ticks_by_day.get(day, ()))
        rows.append(
            [
                day.isoformat(),
                entry.grade.label if entry else "",
                entry.symptoms if entry else "",
                _format_number(measurement.systolic) if measurement else "",
                _format_number(measurement.diastolic) if measurement else "",
                _format_number(measurement.height_cm) if measurement else "",
                _format_number(measurement.weight_kg) if measurement else "",
                _format_number(measurement.bmi_display) if measurement else "",
                str(taken) if due else "",
                str(len(due)) if due else "",
                measurement.comments if measurement else "",
            ]
        )
    return rows


def render_csv(rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(EXPORT_HEADER)
    writer.writerows(rows)
    return buffer.getvalue()


def parse_csv(document: str) -> list[list[str]]:
    """Parse an exported document back into data rows (header dropped)."""
    reader = csv.reader(io.StringIO(document, newline=""))
    rows = list(reader)
    if not rows or rows[0] != EXPORT_HEADER:
        raise ValueError("not a diary export document")
    return rows[1:]
