"""Trigger rules: which events a new diary entry or measurement raises.

Pure functions; the caller supplies the relapse state from before the
write and the rule assessments for the new record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Mapping, Sequence

from ..diary.models import ClinicalMeasurement, DiaryEntry
from ..rules import (
    BpStage,
    GrowthMetric,
    RelapseState,
    RelapseStatus,
    SeverityColor,
    UrineProteinGrade,
    is_heavy,
    relapse_scan,
)
from .events import NotificationEvent, NotificationKind, make_event


@dataclass(frozen=True)
class MeasurementAssessments:
    """Rule outputs for one measurement; channels without data stay None/empty."""

    bp_stage: BpStage | None = None
    growth_bands: Mapping[GrowthMetric, SeverityColor] = field(default_factory=dict)


def evaluate_entry_triggers(
    entry: DiaryEntry,
    history: Sequence[tuple[date, UrineProteinGrade]],
    relapse_before: RelapseState,
) -> list[NotificationEvent]:
    """Events raised by a new diary entry.

    history is the patient's collapsed entry sequence including the new
    entry. A heavy grade always alerts; crossing into relapse adds a
    relapse alert once per episode.
    """
    events: list[NotificationEvent] = []
    if is_heavy(entry.grade):
        events.append(
            make_event(
                entry.patient_id,
                NotificationKind.HEAVY_PROTEINURIA,
                entry.id,
                f"Urine protein {entry.grade.label} recorded on {entry.date.isoformat()}",
                entry.created_at,
            )
        )
    _, relapse_after = relapse_scan(history)
    if (
        relapse_after.status is RelapseStatus.RELAPSE
        and relapse_before.status is not RelapseStatus.RELAPSE
    ):
        onset = relapse_after.onset_date
        events.append(
            make_event(
                entry.patient_id,
                NotificationKind.RELAPSE_DETECTED,
                entry.id,
                f"Possible relapse: heavy proteinuria on {relapse_after.suspect_count} "
                f"consecutive entries since {onset.isoformat() if onset else '?'}",
                entry.created_at,
            )
        )
    events.sort(key=NotificationEvent.kind_order)
    return events


def evaluate_measurement_triggers(
    measurement: ClinicalMeasurement,
    assessments: MeasurementAssessments,
) -> list[NotificationEvent]:
    """Events raised by a new clinical measurement: stage-1/2 BP and red growth bands."""
    events: list[NotificationEvent] = []
    day = measurement.date.isoformat()
    if assessments.bp_stage is BpStage.STAGE1:
        events.append(
            make_event(
                measurement.patient_id,
                NotificationKind.BP_STAGE1,
                measurement.id,
                f"Blood pressure {measurement.systolic}/{measurement.diastolic} on {day} "
                "is in hypertension stage 1",
                measurement.created_at,
            )
        )
    elif assessments.bp_stage is BpStage.STAGE2:
        events.append(
            make_event(
                measurement.patient_id,
                NotificationKind.BP_STAGE2,
                measurement.id,
                f"Blood pressure {measurement.systolic}/{measurement.diastolic} on {day} "
                "is in hypertension stage 2",
                measurement.created_at,
            )
        )
    red_metrics = sorted(
        metric.value
        for metric, band in assessments.growth_bands.items()
        if band is SeverityColor.RED
    )
    if red_metrics:
        events.append(
            make_event(
                measurement.patient_id,
                NotificationKind.GROWTH_RED,
                measurement.id,
                f"Out-of-range anthropometry on {day}: {', '.join(red_metrics)}",
                measurement.created_at,
            )
        )
    events.sort(key=NotificationEvent.kind_order)
    return events
