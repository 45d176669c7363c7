"""Exhaustive authorization matrix: every route crossed with every actor kind.

Actors: anonymous, the patient themselves, another patient, the linked
doctor, an unlinked doctor. Expected statuses encode the documented
access rules; any deviation fails the table.
"""

import pytest

from authz_table import build_world, run_matrix


@pytest.fixture
def world(api, actors):
    return build_world(api, actors)


def test_authorization_matrix(api, world):
    assert run_matrix(api, world) == []


def test_unauthenticated_bodies_use_error_envelope(api, world):
    response = api.get(f"/patients/{world['patient_id']}/timeline")
    assert response.status_code == 401
    assert response.json()["error"]["code"] == "unauthenticated"
