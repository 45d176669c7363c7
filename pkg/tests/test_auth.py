"""Registration, password login, sessions and the OTP flow."""

import re

import pytest

from nephrocare.api.auth import PasswordHasher


def test_password_hasher_round_trip():
    hasher = PasswordHasher(cost=4)
    stored = hasher.hash("s3cret-pw")
    assert stored.startswith("scrypt$4$8$1$")
    assert PasswordHasher.verify("s3cret-pw", stored) is True
    assert PasswordHasher.verify("wrong", stored) is False
    assert PasswordHasher.verify("s3cret-pw", "garbage") is False


def test_hashes_are_salted():
    hasher = PasswordHasher(cost=4)
    assert hasher.hash("same") != hasher.hash("same")


def test_register_patient_without_doctor(api, actors):
    patient_id, headers = actors.register_patient()
    profile = api.get(f"/patients/{patient_id}", headers=headers).json()
    assert profile["doctor_id"] is None
    assert profile["verified"] is False


def test_register_doctor_has_center(api):
    response = api.post(
        "/doctors",
        json={
            "name": "Dr. Rao",
            "center": "City Hospital",
            "contact": "",
            "email": "d@e.org",
            "password": "longenough",
        },
    )
    assert response.status_code == 201
    assert response.json()["center"] == "City Hospital"


def test_duplicate_email_is_409(api, actors):
    actors.register_patient(email="dup@example.org")
    response = api.post(
        "/patients",
        json={
            "name": "Other",
            "date_of_birth": "2016-02-10",
            "sex": "M",
            "email": "dup@example.org",
            "password": "longenough",
        },
    )
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "duplicate_email"


def test_same_email_allowed_across_roles(api, actors):
    actors.register_patient(email="both@example.org")
    response = api.post(
        "/doctors",
        json={"name": "Dr. Both", "email": "both@example.org", "password": "longenough"},
    )
    assert response.status_code == 201


def test_invalid_registration_fields_are_422(api):
    response = api.post(
        "/patients",
        json={
            "name": "",
            "date_of_birth": "2016-02-10",
            "sex": "F",
            "email": "not-an-email",
            "password": "longenough",
        },
    )
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "validation"


def test_login_wrong_password_and_unknown_email_look_identical(api, actors):
    actors.register_patient(email="real@example.org")
    wrong = api.post("/auth/login", json={"email": "real@example.org", "password": "bad-pass"})
    unknown = api.post("/auth/login", json={"email": "ghost@example.org", "password": "bad-pass"})
    assert wrong.status_code == unknown.status_code == 401
    assert wrong.json() == unknown.json()


def test_expired_token_rejected(api, actors, clock):
    _, headers = actors.register_patient()
    assert api.get("/notifications", headers=headers).status_code == 200
    clock.advance(hours=25)  # past the 24 h TTL
    assert api.get("/notifications", headers=headers).status_code == 401


def test_garbage_token_rejected(api):
    assert api.get("/notifications", headers={"Authorization": "Bearer nope"}).status_code == 401
    assert api.get("/notifications", headers={"Authorization": "Basic abc"}).status_code == 401


def test_otp_flow(api, actors, mailer):
    actors.register_patient(email="otp@example.org")
    response = api.post("/auth/otp/request", json={"email": "otp@example.org"})
    assert response.status_code == 202
    code = re.search(r"\b(\d{6})\b", mailer.last_body).group(1)

    verify = api.post("/auth/otp/verify", json={"email": "otp@example.org", "code": code})
    assert verify.status_code == 200
    token = verify.json()["token"]
    assert api.get("/notifications", headers={"Authorization": f"Bearer {token}"}).status_code == 200


def test_otp_single_use(api, actors, mailer):
    actors.register_patient(email="once@example.org")
    api.post("/auth/otp/request", json={"email": "once@example.org"})
    code = re.search(r"\b(\d{6})\b", mailer.last_body).group(1)
    assert api.post("/auth/otp/verify", json={"email": "once@example.org", "code": code}).status_code == 200
    again = api.post("/auth/otp/verify", json={"email": "once@example.org", "code": code})
    assert again.status_code == 401
    assert again.json()["error"]["code"] == "invalid_code"


def test_otp_expires_after_ten_minutes(api, actors, mailer, clock):
    actors.register_patient(email="slow@example.org")
    api.post("/auth/otp/request", json={"email": "slow@example.org"})
    code = re.search(r"\b(\d{6})\b", mailer.last_body).group(1)
    clock.advance(minutes=10, seconds=1)
    response = api.post("/auth/otp/verify", json={"email": "slow@example.org", "code": code})
    assert response.status_code == 401


def test_otp_wrong_code(api, actors, mailer):
    actors.register_patient(email="w@example.org")
    api.post("/auth/otp/request", json={"email": "w@example.org"})
    response = api.post("/auth/otp/verify", json={"email": "w@example.org", "code": "000000"})
    assert response.status_code == 401


def test_otp_rate_limit(api, actors, clock):
    actors.register_patient(email="burst@example.org")
    for _ in range(5):
        assert api.post("/auth/otp/request", json={"email": "burst@example.org"}).status_code == 202
    response = api.post("/auth/otp/request", json={"email": "burst@example.org"})
    assert response.status_code == 429
    # the window slides: an hour later requests work again
    clock.advance(hours=1, seconds=1)
    assert api.post("/auth/otp/request", json={"email": "burst@example.org"}).status_code == 202


def test_otp_unknown_email_is_404(api):
    assert api.post("/auth/otp/request", json={"email": "none@example.org"}).status_code == 404


def test_otp_code_is_six_digits(api, actors, mailer):
    actors.register_patient(email="six@example.org")
    api.post("/auth/otp/request", json={"email": "six@example.org"})
    assert re.search(r"\b\d{6}\b", mailer.last_body)
