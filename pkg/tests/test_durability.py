"""Every 2xx write is durable: an immediate re-read returns the record."""

import base64

import pytest


@pytest.fixture
def linked(api, actors):
    doctor_id, doctor = actors.register_doctor(email="dur-doc@example.org")
    patient_id, patient = actors.register_patient(email="dur-p@example.org", doctor_id=doctor_id)
    return doctor_id, doctor, patient_id, patient


def timeline_ids(api, patient_id, headers):
    items = api.get(f"/patients/{patient_id}/timeline", headers=headers).json()["items"]
    return {item["record"].get("id") for item in items}


def test_every_write_is_immediately_readable(api, linked):
    doctor_id, doctor, patient_id, patient = linked

    entry = api.post(
        f"/patients/{patient_id}/entries",
        json={"date": "2024-06-14", "grade": "1+"},
        headers=patient,
    ).json()
    assert entry["id"] in timeline_ids(api, patient_id, patient)

    measurement = api.post(
        f"/patients/{patient_id}/measurements",
        json={"date": "2024-06-14", "height_cm": 120.0, "weight_kg": 22.0},
        headers=doctor,
    ).json()
    assert measurement["id"] in timeline_ids(api, patient_id, doctor)

    prescription = api.post(
        f"/patients/{patient_id}/prescriptions",
        json={
            "medicine_name": "Pred",
            "category": "steroid",
            "dose": 10,
            "dose_unit": "mg",
            "frequency_per_day": 1,
            "start": "2024-06-01",
        },
        headers=doctor,
    ).json()
    listed = api.get(f"/patients/{patient_id}/prescriptions", headers=patient).json()
    assert prescription["id"] in {p["id"] for p in listed["prescriptions"]}

    dose = api.post(
        f"/patients/{patient_id}/doses",
        json={"prescription_id": prescription["id"], "date": "2024-06-14", "taken": True},
        headers=patient,
    ).json()
    assert dose["id"] in timeline_ids(api, patient_id, patient)

    report = api.post(
        f"/patients/{patient_id}/reports",
        json={"media_type": "image/png", "content_base64": base64.b64encode(b"i").decode()},
        headers=patient,
    ).json()
    listed = api.get(f"/patients/{patient_id}/reports", headers=patient).json()
    assert report["id"] in {r["id"] for r in listed["reports"]}

    advice = api.post(
        f"/patients/{patient_id}/advice", json={"text": "rest"}, headers=doctor
    ).json()
    assert advice["id"] in timeline_ids(api, patient_id, patient)

    order = api.post(
        f"/patients/{patient_id}/tests", json={"tests": ["albumin"]}, headers=doctor
    ).json()
    assert order["id"] in timeline_ids(api, patient_id, patient)

    notify = api.post(
        f"/patients/{patient_id}/notify", json={"body": "visit"}, headers=doctor
    ).json()
    feed = api.get(f"/patients/{patient_id}/notifications", headers=patient).json()["events"]
    assert notify["event"]["id"] in {e["id"] for e in feed}
