"""Shared fixtures: deterministic clock, stores, diary service, API client."""

import json
from datetime import datetime, timedelta, timezone

import pytest
from fastapi.testclient import TestClient

from nephrocare.api import CapturingMailer, create_app
from nephrocare.config import Config
from nephrocare.diary import BlobStore, DiaryService, JsonStore


class FakeClock:
    """Injectable clock; advances only when told to."""

    def __init__(self, start: datetime | None = None):
        self.now = start or datetime(2024, 6, 15, 9, 0, 0, tzinfo=timezone.utc)

    def __call__(self) -> datetime:
        return self.now

    def advance(self, **kwargs) -> datetime:
        self.now += timedelta(**kwargs)
        return self.now

    def set(self, moment: datetime) -> None:
        self.now = moment


@pytest.fixture
def clock():
    return FakeClock()


@pytest.fixture
def store(tmp_path):
    return JsonStore(tmp_path / "store")


@pytest.fixture
def blobs(tmp_path):
    return BlobStore(tmp_path / "blobs")


@pytest.fixture
def diary(store, blobs, clock):
    return DiaryService(store, blobs, clock=clock)


def make_test_config(tmp_path, **overrides) -> Config:
    hospitals = tmp_path / "hospitals.json"
    if not hospitals.exists():
        hospitals.write_text(
            json.dumps(
                [
                    {
                        "name": "District Hospital",
                        "address": "12 Main Road",
                        "phone": "+91-11-000000",
                        "lat": 28.61,
                        "lon": 77.2,
                    }
                ]
            ),
            encoding="utf-8",
        )
    values = {
        "store_path": str(tmp_path / "store"),
        "blob_dir": str(tmp_path / "blobs"),
        "hospitals_path": str(hospitals),
        "hash_cost": 4,  # keep scrypt cheap in tests
        "retry_base_delay": 0.0,
    }
    values.update(overrides)
    return Config(**values)


@pytest.fixture
def mailer():
    return CapturingMailer()


@pytest.fixture
def api(tmp_path, clock, mailer):
    """TestClient plus its backing services, on a fresh store."""
    config = make_test_config(tmp_path)
    app = create_app(config, mailer=mailer, clock=clock, sleep=lambda _s: None)
    with TestClient(app, raise_server_exceptions=True) as client:
        client.services = app.state.services
        client.clock = clock
        client.mailer = mailer
        yield client


class Actors:
    """Convenience bundle: a doctor, a linked patient, and login helpers."""

    def __init__(self, client):
        self.client = client

    def register_doctor(self, email="doc@example.org", name="Dr. Rao", **extra):
        response = self.client.post(
            "/doctors",
            json={
                "name": name,
                "center": "City Hospital",
                "contact": "+91-000",
                "email": email,
                "password": "longenough",
                **extra,
            },
        )
        assert response.status_code == 201, response.text
        return response.json()["id"], self.login(email)

    def register_patient(
        self,
        email="asha@example.org",
        name="Asha",
        doctor_id=None,
        date_of_birth="2016-02-10",
        sex="F",
    ):
        response = self.client.post(
            "/patients",
            json={
                "name": name,
                "date_of_birth": date_of_birth,
                "sex": sex,
                "email": email,
                "password": "longenough",
                "doctor_id": doctor_id,
            },
        )
        assert response.status_code == 201, response.text
        return response.json()["id"], self.login(email)

    def login(self, email, password="longenough"):
        response = self.client.post("/auth/login", json={"email": email, "password": password})
        assert response.status_code == 200, response.text
        return {"Authorization": f"Bearer {response.json()['token']}"}


@pytest.fixture
def actors(api):
    return Actors(api)


def build_three_day_diary(diary, clock):
    """The shared export fixture: three diary days with mixed records.

    Returns the patient profile. Exports of this state must match
    tests/golden/diary_3day.csv byte for byte.
    """
    from datetime import date

    from nephrocare.diary import MedicineCategory
    from nephrocare.rules import Sex, UrineProteinGrade

    clock.set(datetime(2024, 6, 12, 10, 30, 0, tzinfo=timezone.utc))
    doctor = diary.create_doctor("Dr. Rao", center="City Hospital")
    patient = diary.create_patient("Asha", date(2016, 2, 10), Sex.FEMALE, doctor_id=doctor.id)
    prescription = diary.create_prescription(
        doctor.id, patient.id, "Prednisolone", MedicineCategory.STEROID,
        dose=20, dose_unit="mg", frequency_per_day=1, start=date(2024, 6, 9),
    )
    diary.record_entry(
        patient.id, date(2024, 6, 10), UrineProteinGrade.THREE_PLUS, "swelling, mild fever"
    )
    diary.record_dose(patient.id, prescription.id, date(2024, 6, 10), taken=True)
    diary.record_entry(patient.id, date(2024, 6, 11), UrineProteinGrade.ONE_PLUS)
    diary.record_measurement(
        doctor.id,
        patient.id,
        date(2024, 6, 11),
        systolic=104,
        diastolic=66,
        height_cm=121.5,
        weight_kg=23.0,
        comments='clinic visit "routine"',
    )
    diary.record_dose(patient.id, prescription.id, date(2024, 6, 11), taken=False)
    diary.record_entry(patient.id, date(2024, 6, 12), UrineProteinGrade.NEGATIVE)
    return patient
