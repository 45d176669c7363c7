"""Glue between stored records and the pure rules: per-record assessments,
per-patient channel snapshots and criticality."""

from __future__ import annotations

from dataclasses import dataclass

from ..diary.models import ClinicalMeasurement, DiaryEntry, PatientProfile
from ..diary.service import DiaryService
from ..notify.triggers import MeasurementAssessments
from ..rules import (
    BpReading,
    BpReferenceTable,
    BpStage,
    GrowthMetric,
    GrowthReferenceTable,
    LatestAssessments,
    RelapseState,
    ReferenceMiss,
    RulesError,
    SeverityColor,
    assess_growth,
    bp_color,
    classify_urine_protein,
    compute_bmi,
    patient_criticality,
    relapse_scan,
    round_display,
)


@dataclass
class Assessor:
    """Applies the rule set to stored records; missing reference rows make
    a channel unassessable rather than failing the request."""

    bp_table: BpReferenceTable
    growth_table: GrowthReferenceTable

    # -- single records -----------------------------------------------------

    def entry_color(self, entry: DiaryEntry) -> SeverityColor:
        return classify_urine_protein(entry.grade)

    def bp_stage(
        self,
        profile: PatientProfile,
        measurement: ClinicalMeasurement,
        height_hint: float | None = None,
    ) -> BpStage | None:
        """Stage of the measurement's BP, or None when it cannot be assessed.

        height_hint supplies the most recent known height for readings
        that do not carry one themselves.
        """
        if measurement.systolic is None or measurement.diastolic is None:
            return None
        height = measurement.height_cm or height_hint
        if height is None:
            return None
        age = profile.age_months_on(measurement.date)
        try:
            reading = BpReading(
                systolic=measurement.systolic,
                diastolic=measurement.diastolic,
                age_months=age,
                sex=profile.sex,
                height_cm=height,
            )
            from ..rules import classify_bp

            return classify_bp(reading, self.bp_table)
        except RulesError:
            return None

    def growth_bands(
        self, profile: PatientProfile, measurement: ClinicalMeasurement
    ) -> dict[GrowthMetric, "GrowthResult"]:
        age = profile.age_months_on(measurement.date)
        values: dict[GrowthMetric, float] = {}
        if measurement.height_cm is not None:
            values[GrowthMetric.HEIGHT] = measurement.height_cm
        if measurement.weight_kg is not None:
            values[GrowthMetric.WEIGHT] = measurement.weight_kg
        if measurement.height_cm is not None and measurement.weight_kg is not None:
            values[GrowthMetric.BMI] = compute_bmi(measurement.weight_kg, measurement.height_cm)
        results: dict[GrowthMetric, GrowthResult] = {}
        for metric, value in values.items():
            try:
                assessment = assess_growth(value, profile.sex, age, metric, self.growth_table)
            except ReferenceMiss:
                continue
            results[metric] = GrowthResult(z=assessment.z, band=assessment.band)
        return results

    def measurement_assessments(
        self,
        profile: PatientProfile,
        measurement: ClinicalMeasurement,
        height_hint: float | None = None,
    ) -> MeasurementAssessments:
        bands = self.growth_bands(profile, measurement)
        return MeasurementAssessments(
            bp_stage=self.bp_stage(profile, measurement, height_hint),
            growth_bands={metric: result.band for metric, result in bands.items()},
        )

    # -- per-patient snapshots ------------------------------------------------

    def latest_height(self, measurements: list[ClinicalMeasurement]) -> float | None:
        for measurement in sorted(measurements, key=lambda m: (m.date, m.created_at), reverse=True):
            if measurement.height_cm is not None:
                return measurement.height_cm
        return None

    def snapshot(self, diary: DiaryService, profile: PatientProfile) -> "PatientSnapshot":
        """Most recent assessment of every channel plus the relapse state."""
        entries = diary.entries(profile.id)
        measurements = diary.measurements(profile.id)
        _, relapse = relapse_scan([(e.date, e.grade) for e in entries])

        urine_color = self.entry_color(entries[-1]) if entries else None

        newest_first = sorted(
            measurements, key=lambda m: (m.date, m.created_at), reverse=True
        )
        height_hint = self.latest_height(measurements)
        stage = None
        for measurement in newest_first:
            stage = self.bp_stage(profile, measurement, height_hint)
            if stage is not None:
                break
        bands: dict[GrowthMetric, SeverityColor] = {}
        for measurement in newest_first:
            for metric, result in self.growth_bands(profile, measurement).items():
                bands.setdefault(metric, result.band)

        latest = LatestAssessments(
            urine_color=urine_color, bp_stage=stage, growth_bands=bands
        )
        return PatientSnapshot(
            latest=latest,
            relapse=relapse,
            critical=patient_criticality(latest, relapse),
        )


@dataclass(frozen=True)
class GrowthResult:
    z: float
    band: SeverityColor

    def to_dict(self) -> dict:
        return {"z": round_display(self.z, 2), "band": self.band.label}


@dataclass(frozen=True)
class PatientSnapshot:
    latest: LatestAssessments
    relapse: RelapseState
    critical: bool


def serialize_relapse(relapse: RelapseState) -> dict:
    return {
        "status": relapse.status.value,
        "suspect_count": relapse.suspect_count,
        "onset_date": relapse.onset_date.isoformat() if relapse.onset_date else None,
    }


def serialize_bp(stage: BpStage | None) -> dict:
    if stage is None:
        return {"bp_stage": None, "bp_color": None}
    return {"bp_stage": stage.label, "bp_color": bp_color(stage).label}
