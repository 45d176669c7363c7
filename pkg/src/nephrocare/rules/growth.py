"""Anthropometry z-scores against sex/age reference medians.

The reference table maps (sex, age in months, metric) to the population
median and standard deviation; a measurement's z-score and color band
follow directly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import TextIO

from .errors import DomainError, ReferenceMiss
from .grading import Sex, SeverityColor

GROWTH_CSV_HEADER = ["sex", "age_months", "metric", "median", "sd"]

# Maximum distance, in months, between a measurement's age and the
# reference row used for it.
MAX_AGE_GAP_MONTHS = 6


class GrowthMetric(Enum):
    HEIGHT = "height"
    WEIGHT = "weight"
    BMI = "bmi"


@dataclass(frozen=True)
class GrowthRow:
    sex: Sex
    age_months: int
    metric: GrowthMetric
    median: float
    sd: float


@dataclass(frozen=True)
class GrowthAssessment:
    z: float
    band: SeverityColor


def band_for_z(z: float) -> SeverityColor:
    """Red from |z| of 2, yellow from 1, green below."""
    magnitude = abs(z)
    if magnitude >= 2:
        return SeverityColor.RED
    if magnitude >= 1:
        return SeverityColor.YELLOW
    return SeverityColor.GREEN


@dataclass
class GrowthReferenceTable:
    rows: list[GrowthRow]

    @classmethod
    def load(cls, path: str | Path) -> "GrowthReferenceTable":
        with open(path, encoding="utf-8", newline="") as fh:
            return cls.from_csv(fh)

    @classmethod
    def from_csv(cls, fh: TextIO) -> "GrowthReferenceTable":
        reader = csv.DictReader(fh)
        if reader.fieldnames != GROWTH_CSV_HEADER:
            raise DomainError(
                f"unexpected growth table header: {reader.fieldnames} (want {GROWTH_CSV_HEADER})"
            )
        rows = []
        for record in reader:
            row = GrowthRow(
                sex=Sex(record["sex"]),
                age_months=int(record["age_months"]),
                metric=GrowthMetric(record["metric"]),
                median=float(record["median"]),
                sd=float(record["sd"]),
            )
            if row.sd <= 0:
                raise DomainError(f"sd must be positive: {record}")
            rows.append(row)
        table = cls(rows=rows)
        table._check_age_order()
        return table

    def _check_age_order(self) -> None:
        series: dict[tuple[Sex, GrowthMetric], int] = {}
        for row in self.rows:
            key = (row.sex, row.metric)
            if key in series and row.age_months <= series[key]:
                raise DomainError(
                    f"ages must be strictly increasing per (sex, metric): {key} at {row.age_months}"
                )
            series[key] = row.age_months

    def nearest_row(self, sex: Sex, age_months: int, metric: GrowthMetric) -> GrowthRow:
        """Nearest-age row within the allowed gap; ties resolve to the younger row."""
        best: GrowthRow | None = None
        best_key: tuple[int, int] | None = None
        for row in self.rows:
            if row.sex is not sex or row.metric is not metric:
                continue
            gap = abs(row.age_months - age_months)
            if gap > MAX_AGE_GAP_MONTHS:
                continue
            key = (gap, row.age_months)
            if best_key is None or key < best_key:
                best, best_key = row, key
        if best is None:
            raise ReferenceMiss(
                f"no growth reference row within {MAX_AGE_GAP_MONTHS} months of "
                f"sex={sex.value} age={age_months} metric={metric.value}"
            )
        return best


def assess_growth(
    value: float,
    sex: Sex,
    age_months: int,
    metric: GrowthMetric,
    table: GrowthReferenceTable,
) -> GrowthAssessment:
    """z-score and color band for one measurement against the reference."""
    if value <= 0:
        raise DomainError(f"measurement value must be positive, got {value}")
    row = table.nearest_row(sex, age_months, metric)
    z = (value - row.median) / row.sd
    return GrowthAssessment(z=z, band=band_for_z(z))
