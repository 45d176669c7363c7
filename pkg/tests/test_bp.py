"""BP staging against the packaged reference table and an independent oracle."""

import csv
import io
import random

import pytest

from nephrocare.tables import default_bp_table_path
from nephrocare.rules import (
    BpReading,
    BpReferenceTable,
    BpStage,
    DomainError,
    ReferenceMiss,
    Sex,
    SeverityColor,
    bp_color,
    classify_bp,
)


@pytest.fixture(scope="module")
def table():
    return BpReferenceTable.load(default_bp_table_path())


# --- independent oracle -------------------------------------------------

def oracle_stage(reading, csv_path):
    """Recompute the stage from the raw CSV: one channel at a time, then max."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))

    def channel(value, cutoffs):
        # cutoffs: ascending [(threshold, stage), ...]
        result = 0
        for threshold, stage in cutoffs:
            if value >= threshold:
                result = max(result, stage)
        return result

    static = {}
    for row in rows:
        if row["sex"] == reading.sex.value and row["height_band"].startswith("static_"):
            static[row["height_band"][len("static_"):]] = (
                int(row["sbp_p90"]),
                int(row["dbp_p90"]),
            )

    if reading.age_months >= 156:
        sys_stage = channel(
            reading.systolic,
            [(static["elevated"][0], 1), (static["stage1"][0], 2), (static["stage2"][0], 3)],
        )
        dia_stage = channel(
            reading.diastolic,
            [(static["elevated"][1], 1), (static["stage1"][1], 2), (static["stage2"][1], 3)],
        )
        return BpStage(max(sys_stage, dia_stage))

    age_years = reading.age_months // 12
    for row in rows:
        if row["height_band"].startswith("static_"):
            continue
        if row["sex"] != reading.sex.value or int(row["age_years"]) != age_years:
            continue
        lo, hi = row["height_band"].split("-")
        if lo != "*" and reading.height_cm < float(lo):
            continue
        if hi != "*" and reading.height_cm >= float(hi):
            continue
        sys_stage = channel(
            reading.systolic,
            [
                (int(row["sbp_p90"]), 1),
                (int(row["sbp_p95"]), 2),
                (min(int(row["sbp_p95"]) + 12, static["stage2"][0]), 3),
            ],
        )
        dia_stage = channel(
            reading.diastolic,
            [
                (int(row["dbp_p90"]), 1),
                (int(row["dbp_p95"]), 2),
                (min(int(row["dbp_p95"]) + 12, static["stage2"][1]), 3),
            ],
        )
        return BpStage(max(sys_stage, dia_stage))
    raise LookupError("oracle found no covering row")


# --- loader -------------------------------------------------------------

def test_loads_and_covers_ages_1_to_12(table):
    table.validate_coverage()
    assert all(row.sbp_p90 < row.sbp_p95 for row in table.rows)
    assert all(row.dbp_p90 < row.dbp_p95 for row in table.rows)


def test_static_thresholds_match_table_file(table):
    # hand-checked against the static_* rows of the packaged CSV
    for sex in Sex:
        static = table.static_for(sex)
        assert static.elevated == (120, 80)
        assert static.stage1 == (130, 80)
        assert static.stage2 == (140, 90)


def test_rejects_bad_header():
    bad = "sex,age_years,band,sbp_p90,sbp_p95,dbp_p90,dbp_p95\nM,1,*-*,90,94,50,53\n"
    with pytest.raises(DomainError):
        BpReferenceTable.from_csv(io.StringIO(bad))


def test_rejects_p90_not_below_p95():
    text = (
        "sex,age_years,height_band,sbp_p90,sbp_p95,dbp_p90,dbp_p95\n"
        "M,1,*-*,95,95,50,53\n"
    )
    with pytest.raises(DomainError):
        BpReferenceTable.from_csv(io.StringIO(text))


# --- reading invariants ---------------------------------------------------

@pytest.mark.parametrize(
    "systolic,diastolic,age,height",
    [
        (80, 90, 60, 110.0),   # diastolic above systolic
        (90, 0, 60, 110.0),    # non-positive diastolic
        (110, 70, 0, 110.0),   # age out of range
        (110, 70, 300, 110.0),
        (110, 70, 60, -5.0),   # bad height
    ],
)
def test_reading_invariants(systolic, diastolic, age, height):
    with pytest.raises(DomainError):
        BpReading(systolic, diastolic, age, Sex.MALE, height)


# --- staging ------------------------------------------------------------

def test_adolescent_stage2(table):
    # age 170 months with 142/92: above the 140/90 static stage-2 cutoffs
    reading = BpReading(142, 92, 170, Sex.MALE, 165.0)
    assert classify_bp(reading, table) is BpStage.STAGE2


def test_adolescent_ladder(table):
    assert classify_bp(BpReading(118, 70, 160, Sex.FEMALE, 158.0), table) is BpStage.NORMAL
    assert classify_bp(BpReading(122, 70, 160, Sex.FEMALE, 158.0), table) is BpStage.ELEVATED
    assert classify_bp(BpReading(131, 70, 160, Sex.FEMALE, 158.0), table) is BpStage.STAGE1
    # diastolic alone can drive the stage
    assert classify_bp(BpReading(110, 85, 160, Sex.FEMALE, 158.0), table) is BpStage.STAGE1
    assert classify_bp(BpReading(110, 95, 160, Sex.FEMALE, 158.0), table) is BpStage.STAGE2


def test_below_all_thresholds_is_normal(table):
    for row in table.rows:
        height = row.band.lower if row.band.lower is not None else (
            row.band.upper - 1 if row.band.upper is not None else 100.0
        )
        reading = BpReading(
            row.sbp_p90 - 1,
            row.dbp_p90 - 1,
            row.age_years * 12 + 3,
            row.sex,
            height,
        )
        assert classify_bp(reading, table) is BpStage.NORMAL


def test_boundary_exactly_p90_is_elevated(table):
    row = table.find_row(Sex.MALE, 8, 127.0)
    reading = BpReading(row.sbp_p90, row.dbp_p90 - 5, 8 * 12 + 2, Sex.MALE, 127.0)
    assert classify_bp(reading, table) is BpStage.ELEVATED


def test_boundary_exactly_p95_is_stage1(table):
    row = table.find_row(Sex.MALE, 8, 127.0)
    reading = BpReading(row.sbp_p95, row.dbp_p90 - 5, 8 * 12 + 2, Sex.MALE, 127.0)
    assert classify_bp(reading, table) is BpStage.STAGE1


def test_p95_plus_12_is_stage2(table):
    row = table.find_row(Sex.FEMALE, 4, 101.0)
    reading = BpReading(row.sbp_p95 + 12, row.dbp_p90 - 5, 4 * 12 + 1, Sex.FEMALE, 101.0)
    assert classify_bp(reading, table) is BpStage.STAGE2


def test_reference_miss_for_infant(table):
    reading = BpReading(95, 55, 6, Sex.FEMALE, 62.0)  # age 0 years: not in table
    with pytest.raises(ReferenceMiss):
        classify_bp(reading, table)


def test_randomized_readings_match_oracle(table):
    rng = random.Random(777)
    path = default_bp_table_path()
    for _ in range(500):
        age = rng.randint(12, 216)
        systolic = rng.randint(60, 190)
        diastolic = rng.randint(30, systolic - 1)
        height = rng.uniform(60.0, 190.0)
        sex = rng.choice(list(Sex))
        reading = BpReading(systolic, diastolic, age, sex, height)
        assert classify_bp(reading, table) is oracle_stage(reading, path)


def test_stage_is_max_of_channels(table):
    # swapping in a worse diastolic can only raise the stage
    base = BpReading(100, 60, 100, Sex.MALE, 130.0)
    worse = BpReading(100, 95, 100, Sex.MALE, 130.0)
    assert classify_bp(worse, table) >= classify_bp(base, table)


@pytest.mark.parametrize(
    "stage,color",
    [
        (BpStage.NORMAL, SeverityColor.GREEN),
        (BpStage.ELEVATED, SeverityColor.GREEN),
        (BpStage.STAGE1, SeverityColor.YELLOW),
        (BpStage.STAGE2, SeverityColor.RED),
    ],
)
def test_bp_color(stage, color):
    assert bp_color(stage) is color
