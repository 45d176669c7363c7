"""Pediatric blood-pressure staging against a percentile reference table.

Children under 13 years are staged against sex/age/height-band percentile
rows; from 13 years on, fixed cutoffs apply. Both kinds of thresholds are
loaded from one CSV file (see BpReferenceTable.load) so norms can be
swapped without a rebuild.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Iterable, TextIO

from .errors import DomainError, ReferenceMiss
from .grading import Sex, SeverityColor

ADOLESCENT_AGE_MONTHS = 13 * 12

BP_CSV_HEADER = ["sex", "age_years", "height_band", "sbp_p90", "sbp_p95", "dbp_p90", "dbp_p95"]

# Fixed cutoffs for age >= 13 years, used when the table file carries no
# static_* override rows.
DEFAULT_STATIC_THRESHOLDS = {
    "elevated": (120, 80),
    "stage1": (130, 80),
    "stage2": (140, 90),
}


class BpStage(IntEnum):
    NORMAL = 0
    ELEVATED = 1
    STAGE1 = 2
    STAGE2 = 3

    @property
    def label(self) -> str:
        return self.name.lower()


def bp_color(stage: BpStage) -> SeverityColor:
    """Chart color for a BP stage: stage 1 is yellow, stage 2 red."""
    if stage is BpStage.STAGE2:
        return SeverityColor.RED
    if stage is BpStage.STAGE1:
        return SeverityColor.YELLOW
    return SeverityColor.GREEN


@dataclass(frozen=True)
class BpReading:
    systolic: int
    diastolic: int
    age_months: int
    sex: Sex
    height_cm: float

    def __post_init__(self) -> None:
        if not self.systolic > self.diastolic > 0:
            raise DomainError(
                f"require systolic > diastolic > 0, got {self.systolic}/{self.diastolic}"
            )
        if not 0 < self.age_months <= 216:
            raise DomainError(f"age must be in (0, 216] months, got {self.age_months}")
        if self.height_cm <= 0:
            raise DomainError(f"height must be positive, got {self.height_cm}")


@dataclass(frozen=True)
class HeightBand:
    """Half-open height interval in cm: lower inclusive, upper exclusive.

    Serialized as "lo-hi" with "*" for an open end, e.g. "*-96", "96-104",
    "104-*".
    """

    lower: float | None
    upper: float | None

    @classmethod
    def parse(cls, text: str) -> "HeightBand":
        parts = text.strip().split("-")
        if len(parts) != 2:
            raise DomainError(f"malformed height band: {text!r}")
        lower = None if parts[0] == "*" else float(parts[0])
        upper = None if parts[1] == "*" else float(parts[1])
        if lower is not None and upper is not None and lower >= upper:
            raise DomainError(f"empty height band: {text!r}")
        return cls(lower, upper)

    def contains(self, height_cm: float) -> bool:
        if self.lower is not None and height_cm < self.lower:
            return False
        if self.upper is not None and height_cm >= self.upper:
            return False
        return True


@dataclass(frozen=True)
class PercentileRow:
    sex: Sex
    age_years: int
    band: HeightBand
    sbp_p90: int
    sbp_p95: int
    dbp_p90: int
    dbp_p95: int


@dataclass(frozen=True)
class StaticThresholds:
    """Fixed systolic/diastolic cutoffs applied from 13 years of age."""

    elevated: tuple[int, int]
    stage1: tuple[int, int]
    stage2: tuple[int, int]


@dataclass
class BpReferenceTable:
    """Percentile rows plus static adolescent cutoffs.

    Static rows are carried in the same CSV using sentinel height_band
    values static_elevated / static_stage1 / static_stage2, with the
    systolic cutoff in sbp_p90 and the diastolic cutoff in dbp_p90 (the
    p95 columns of those rows are fillers to keep the schema uniform).
    """

    rows: list[PercentileRow]
    static: dict[Sex, StaticThresholds] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> "BpReferenceTable":
        with open(path, encoding="utf-8", newline="") as fh:
            return cls.from_csv(fh)

    @classmethod
    def from_csv(cls, fh: TextIO) -> "BpReferenceTable":
        reader = csv.DictReader(fh)
        if reader.fieldnames != BP_CSV_HEADER:
            raise DomainError(
                f"unexpected BP table header: {reader.fieldnames} (want {BP_CSV_HEADER})"
            )
        rows: list[PercentileRow] = []
        static_raw: dict[Sex, dict[str, tuple[int, int]]] = {}
        for record in reader:
            sex = Sex(record["sex"])
            band_text = record["height_band"].strip()
            if band_text.startswith("static_"):
                name = band_text.removeprefix("static_")
                if name not in DEFAULT_STATIC_THRESHOLDS:
                    raise DomainError(f"unknown static threshold row: {band_text!r}")
                static_raw.setdefault(sex, {})[name] = (
                    int(record["sbp_p90"]),
                    int(record["dbp_p90"]),
                )
                continue
            row = PercentileRow(
                sex=sex,
                age_years=int(record["age_years"]),
                band=HeightBand.parse(band_text),
                sbp_p90=int(record["sbp_p90"]),
                sbp_p95=int(record["sbp_p95"]),
                dbp_p90=int(record["dbp_p90"]),
                dbp_p95=int(record["dbp_p95"]),
            )
            if not (row.sbp_p90 < row.sbp_p95 and row.dbp_p90 < row.dbp_p95):
                raise DomainError(
                    f"p90 must be below p95 in every row: {record}"
                )
            rows.append(row)
        static = {}
        for sex in Sex:
            named = static_raw.get(sex, {})
            merged = {**DEFAULT_STATIC_THRESHOLDS, **named}
            static[sex] = StaticThresholds(
                elevated=merged["elevated"], stage1=merged["stage1"], stage2=merged["stage2"]
            )
        return cls(rows=rows, static=static)

    def validate_coverage(self) -> None:
        """Check that every age 1-12 is present for both sexes."""
        seen = {(row.sex, row.age_years) for row in self.rows}
        missing = [
            (sex.value, age)
            for sex in Sex
            for age in range(1, 13)
            if (sex, age) not in seen
        ]
        if missing:
            raise DomainError(f"BP table does not cover: {missing}")

    def find_row(self, sex: Sex, age_years: int, height_cm: float) -> PercentileRow:
        for row in self.rows:
            if row.sex is sex and row.age_years == age_years and row.band.contains(height_cm):
                return row
        raise ReferenceMiss(
            f"no BP reference row for sex={sex.value} age_years={age_years} height={height_cm}"
        )

    def static_for(self, sex: Sex) -> StaticThresholds:
        return self.static[sex]


def _stage_from_cutoffs(value: int, cutoffs: Iterable[tuple[int, BpStage]]) -> BpStage:
    """Highest stage whose cutoff the value meets; cutoffs are (threshold, stage)."""
    stage = BpStage.NORMAL
    for threshold, candidate in cutoffs:
        if value >= threshold and candidate > stage:
            stage = candidate
    return stage


def _channel_cutoffs(
    p90: int, p95: int, static_stage2: int
) -> list[tuple[int, BpStage]]:
    return [
        (p90, BpStage.ELEVATED),
        (p95, BpStage.STAGE1),
        (min(p95 + 12, static_stage2), BpStage.STAGE2),
    ]


def classify_bp(reading: BpReading, table: BpReferenceTable) -> BpStage:
    """Stage a reading: the maximum of the systolic- and diastolic-implied stages.

    Under 13 years the row's p90/p95 thresholds apply (stage 2 from
    p95 + 12 mmHg or the static stage-2 cutoff, whichever is lower);
    from 13 years the static cutoffs apply directly.
    """
    static = table.static_for(reading.sex)
    if reading.age_months >= ADOLESCENT_AGE_MONTHS:
        sys_stage = _stage_from_cutoffs(
            reading.systolic,
            [
                (static.elevated[0], BpStage.ELEVATED),
                (static.stage1[0], BpStage.STAGE1),
                (static.stage2[0], BpStage.STAGE2),
            ],
        )
        dia_stage = _stage_from_cutoffs(
            reading.diastolic,
            [
                (static.elevated[1], BpStage.ELEVATED),
                (static.stage1[1], BpStage.STAGE1),
                (static.stage2[1], BpStage.STAGE2),
            ],
        )
        return max(sys_stage, dia_stage)

    row = table.find_row(reading.sex, reading.age_months // 12, reading.height_cm)
    sys_stage = _stage_from_cutoffs(
        reading.systolic, _channel_cutoffs(row.sbp_p90, row.sbp_p95, static.stage2[0])
    )
    dia_stage = _stage_from_cutoffs(
        reading.diastolic, _channel_cutoffs(row.dbp_p90, row.dbp_p95, static.stage2[1])
    )
    return max(sys_stage, dia_stage)
