"""Merged timeline: ordering, filtering, stability."""

import random
from datetime import date, timedelta

import pytest

from nephrocare.diary import AuthorRole, MedicineCategory, UnknownPatient
from nephrocare.rules import Sex, UrineProteinGrade

G = UrineProteinGrade


@pytest.fixture
def doctor(diary):
    return diary.create_doctor("Dr. Rao")


@pytest.fixture
def patient(diary, doctor):
    return diary.create_patient("Asha", date(2016, 2, 10), Sex.FEMALE, doctor_id=doctor.id)


def test_empty_timeline(diary, patient):
    assert diary.timeline(patient.id) == []


def test_unknown_patient(diary):
    with pytest.raises(UnknownPatient):
        diary.timeline("missing")


def populate(diary, doctor, patient, clock, rng):
    base = date(2024, 5, 1)
    prescription = diary.create_prescription(
        doctor.id, patient.id, "Pred", MedicineCategory.STEROID,
        dose=20, dose_unit="mg", frequency_per_day=1, start=base,
    )
    for i in rng.sample(range(30), 12):
        clock.advance(minutes=rng.randint(1, 300))
        diary.record_entry(patient.id, base + timedelta(days=i), rng.choice(list(G)))
    for i in rng.sample(range(30), 5):
        clock.advance(minutes=rng.randint(1, 300))
        diary.record_measurement(
            doctor.id, patient.id, base + timedelta(days=i), systolic=100, diastolic=60
        )
    for i in rng.sample(range(30), 6):
        clock.advance(minutes=rng.randint(1, 300))
        diary.record_dose(patient.id, prescription.id, base + timedelta(days=i), taken=True)
    clock.advance(hours=1)
    diary.add_advice(patient.id, "rest", AuthorRole.DOCTOR)
    clock.advance(hours=1)
    diary.add_test_order(doctor.id, patient.id, ["albumin"])


def test_order_matches_sort_oracle(diary, doctor, patient, clock):
    rng = random.Random(7)
    populate(diary, doctor, patient, clock, rng)
    items = diary.timeline(patient.id)
    keys = [(i.date, i.created_at, i.record.id) for i in items]
    assert keys == sorted(keys)
    # every stored record shows up exactly once
    assert len(items) == 12 + 5 + 6 + 1 + 1


def test_range_filter_matches_oracle(diary, doctor, patient, clock):
    rng = random.Random(8)
    populate(diary, doctor, patient, clock, rng)
    full = diary.timeline(patient.id)
    start, end = date(2024, 5, 8), date(2024, 5, 20)
    windowed = diary.timeline(patient.id, start=start, end=end)
    expected = [i for i in full if start <= i.date <= end]
    assert [(i.kind, i.record.id) for i in windowed] == [
        (i.kind, i.record.id) for i in expected
    ]


def test_stable_across_calls(diary, doctor, patient, clock):
    rng = random.Random(9)
    populate(diary, doctor, patient, clock, rng)
    first = [(i.kind, i.record.id) for i in diary.timeline(patient.id)]
    second = [(i.kind, i.record.id) for i in diary.timeline(patient.id)]
    assert first == second


def test_timeline_includes_feed_notifications(store, blobs, clock):
    from nephrocare.diary import DiaryService
    from nephrocare.notify import FeedStore, NotificationKind, make_event

    feed = FeedStore(store)
    diary = DiaryService(store, blobs, clock=clock, feed_reader=feed.list_events)
    doctor = diary.create_doctor("D")
    patient = diary.create_patient("P", date(2016, 2, 10), Sex.FEMALE, doctor_id=doctor.id)
    entry = diary.record_entry(patient.id, date(2024, 6, 1), G.THREE_PLUS)
    event = make_event(
        patient.id, NotificationKind.HEAVY_PROTEINURIA, entry.id, "alert", clock.now
    )
    feed.append(patient.id, event)

    kinds = [i.kind for i in diary.timeline(patient.id)]
    assert kinds == ["entry", "notification"]
