"""HTTP service: registration, auth, diary writes, reads, alerts, export.

The app is built by create_app() from a Config; tests inject a capturing
mailer and a fake clock. Feed writes happen synchronously inside the
request, so a 2xx write response means the triggered notifications are
already visible in the recipients' feeds.
"""

from __future__ import annotations

import base64
import binascii
import json
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path
from typing import Callable

from fastapi import Depends, FastAPI, Header, Request, Response

from ..config import Config
from ..diary import (
    AuthorRole,
    BlobStore,
    DiaryEntry,
    DiaryService,
    DiaryError,
    ClinicalMeasurement,
    FutureDate,
    JsonStore,
    NotLinked,
    PatientProfile,
    Prescription,
    TimelineItem,
    UnknownDoctor,
    UnknownPatient,
    UnknownRecord,
    ValidationFailure,
    can_read_patient,
)
from ..diary.service import utcnow
from ..notify import (
    Dispatcher,
    FeedSink,
    FeedStore,
    LogFileSink,
    NotificationEvent,
    NotificationKind,
    RetryPolicy,
    WebhookSink,
    evaluate_entry_triggers,
    evaluate_measurement_triggers,
    make_event,
)
from ..rules import (
    BpReferenceTable,
    DomainError,
    GrowthReferenceTable,
    RelapseState,
    bp_color,
    classify_urine_protein,
    relapse_scan,
    scan_state,
)
from .assessments import Assessor, serialize_bp, serialize_relapse
from .auth import AuthService, DuplicateEmail, PasswordHasher, Principal, RateLimited, UnknownEmail
from .errors import ApiError, forbidden, install_handlers, not_found, unauthenticated
from .mailer import CapturingMailer, ConsoleMailer, Mailer, SmtpMailer
from .schemas import (
    AdviceBody,
    DoctorRegistration,
    DoseBody,
    EntryBody,
    LoginRequest,
    MeasurementBody,
    NotifyBody,
    OtpRequest,
    OtpVerify,
    PatientPatch,
    PatientRegistration,
    PrescriptionBody,
    PrescriptionUpdate,
    ReportBody,
    TestOrderBody,
    TransferBody,
)


@dataclass
class Services:
    config: Config
    diary: DiaryService
    feed: FeedStore
    auth: AuthService
    assessor: Assessor
    dispatcher: Dispatcher
    mailer: Mailer
    hospitals: list[dict]
    clock: Callable[[], datetime]


def _load_hospitals(path: str) -> list[dict]:
    if not path:
        return []
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    keys = {"name", "address", "phone", "lat", "lon"}
    return [{key: item.get(key) for key in keys} for item in data]


def build_services(
    config: Config,
    mailer: Mailer | None = None,
    clock: Callable[[], datetime] | None = None,
    sleep: Callable[[float], None] | None = None,
) -> Services:
    clock = clock or utcnow
    store = JsonStore(config.store_path)
    blobs = BlobStore(config.blob_dir)
    feed = FeedStore(store)
    diary = DiaryService(
        store,
        blobs,
        clock=clock,
        report_size_cap=config.report_size_cap,
        feed_reader=feed.list_events,
    )
    assessor = Assessor(
        bp_table=BpReferenceTable.load(config.bp_table_path),
        growth_table=GrowthReferenceTable.load(config.growth_table_path),
    )

    def doctor_of(patient_id: str) -> str | None:
        try:
            return diary.get_patient(patient_id).doctor_id
        except UnknownPatient:
            return None

    sinks = [FeedSink(feed, doctor_of)]
    for url in config.webhook_urls:
        sinks.append(WebhookSink(url))
    if config.notification_log_path:
        sinks.append(LogFileSink(config.notification_log_path))
    dispatcher_kwargs = {}
    if sleep is not None:
        dispatcher_kwargs["sleep"] = sleep
    dispatcher = Dispatcher(
        sinks,
        retry=RetryPolicy(attempts=config.retry_attempts, base_delay=config.retry_base_delay),
        **dispatcher_kwargs,
    )

    if mailer is None:
        if config.smtp_host:
            mailer = SmtpMailer(
                host=config.smtp_host,
                port=config.smtp_port,
                username=config.smtp_username,
                password=config.smtp_password,
                sender=config.mail_from,
            )
        else:
            mailer = ConsoleMailer()

    auth = AuthService(
        store,
        hasher=PasswordHasher(cost=config.hash_cost),
        clock=clock,
        token_ttl_hours=config.token_ttl_hours,
    )
    return Services(
        config=config,
        diary=diary,
        feed=feed,
        auth=auth,
        assessor=assessor,
        dispatcher=dispatcher,
        mailer=mailer,
        hospitals=_load_hospitals(config.hospitals_path),
        clock=clock,
    )


# -- dependencies -------------------------------------------------------------


def get_services(request: Request) -> Services:
    return request.app.state.services


def require_principal(
    request: Request, authorization: str | None = Header(default=None)
) -> Principal:
    if not authorization or not authorization.startswith("Bearer "):
        raise unauthenticated()
    token = authorization.removeprefix("Bearer ").strip()
    principal = get_services(request).auth.authenticate(token)
    if principal is None:
        raise unauthenticated()
    return principal


@contextmanager
def diary_errors():
    """Translate domain errors into the HTTP envelope."""
    try:
        yield
    except (UnknownPatient, UnknownDoctor, UnknownRecord) as exc:
        raise not_found(f"{type(exc).__name__}: {exc}") from exc
    except NotLinked as exc:
        raise forbidden(str(exc)) from exc
    except (FutureDate, ValidationFailure, DomainError) as exc:
        raise ApiError(422, "validation", str(exc)) from exc


def _get_patient(services: Services, patient_id: str) -> PatientProfile:
    with diary_errors():
        return services.diary.get_patient(patient_id)


def _require_read_access(principal: Principal, patient: PatientProfile) -> None:
    if not can_read_patient(principal.role, principal.id, patient):
        raise forbidden("no access to this patient")


def _require_patient_self(principal: Principal, patient: PatientProfile) -> None:
    if principal.role is not AuthorRole.PATIENT or principal.id != patient.id:
        raise forbidden("only the patient may do this")


def _require_linked_doctor(principal: Principal, patient: PatientProfile) -> None:
    if principal.role is not AuthorRole.DOCTOR:
        raise forbidden("doctor role required")
    if patient.doctor_id != principal.id:
        raise forbidden("not the treating doctor of this patient")


def _require_write_access(principal: Principal, patient: PatientProfile) -> None:
    """Entries, doses, reports, advice: the patient or their linked doctor."""
    if principal.role is AuthorRole.PATIENT:
        if principal.id != patient.id:
            raise forbidden("patients may only write their own diary")
    else:
        _require_linked_doctor(principal, patient)


# -- serialization ------------------------------------------------------------


def entry_payload(entry: DiaryEntry, relapse: RelapseState | None = None) -> dict:
    payload = entry.to_dict()
    payload["color"] = classify_urine_protein(entry.grade).label
    payload["nominal_mg_dl"] = entry.grade.nominal_mg_dl
    if relapse is not None:
        payload["relapse"] = serialize_relapse(relapse)
    return payload


def measurement_payload(services: Services, profile: PatientProfile, m: ClinicalMeasurement) -> dict:
    payload = m.to_dict()
    payload["bmi"] = m.bmi_display
    height_hint = services.assessor.latest_height(services.diary.measurements(profile.id))
    payload.update(serialize_bp(services.assessor.bp_stage(profile, m, height_hint)))
    payload["growth"] = {
        metric.value: result.to_dict()
        for metric, result in services.assessor.growth_bands(profile, m).items()
    }
    return payload


def prescription_payload(p: Prescription) -> dict:
    return p.to_dict()


def dose_payload(services, event) -> dict:
    payload = event.to_dict()
    payload["color"] = "green" if event.taken else "yellow"
    return payload


def patient_payload(services: Services, profile: PatientProfile) -> dict:
    snapshot = services.assessor.snapshot(services.diary, profile)
    payload = profile.to_dict()
    payload["critical"] = snapshot.critical
    payload["relapse"] = serialize_relapse(snapshot.relapse)
    return payload


def timeline_item_payload(services: Services, profile: PatientProfile, item: TimelineItem) -> dict:
    if item.kind == "entry":
        record = entry_payload(item.record)
    elif item.kind == "measurement":
        record = measurement_payload(services, profile, item.record)
    elif item.kind == "dose_event":
        record = dose_payload(services, item.record)
    elif item.kind == "notification":
        record = dict(item.record)
    else:
        record = item.record.to_dict()
    return {
        "kind": item.kind,
        "date": item.date.isoformat(),
        "created_at": record.get("created_at") or record.get("recorded_at"),
        "record": record,
    }


def _dispatch(services: Services, events: list[NotificationEvent]) -> None:
    if events:
        services.dispatcher.dispatch(events)


# -- app factory ---------------------------------------------------------------


def create_app(
    config: Config | None = None,
    mailer: Mailer | None = None,
    clock: Callable[[], datetime] | None = None,
    sleep: Callable[[float], None] | None = None,
) -> FastAPI:
    app = FastAPI(title="nephrocare", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.services = build_services(config or Config(), mailer=mailer, clock=clock, sleep=sleep)
    install_handlers(app)

    services_dep = Depends(get_services)
    principal_dep = Depends(require_principal)

    # -- health and registration -------------------------------------------

    @app.get("/healthz")
    def healthz(services: Services = services_dep):
        return {"status": "ok"}

    @app.post("/patients", status_code=201)
    def register_patient(body: PatientRegistration, services: Services = services_dep):
        if body.doctor_id is not None:
            with diary_errors():
                services.diary.get_doctor(body.doctor_id)
        profile = services.diary.create_patient(
            name=body.name,
            date_of_birth=body.date_of_birth,
            sex=body.sex,
            doctor_id=body.doctor_id,
            history_notes=body.history_notes,
        )
        try:
            services.auth.register(AuthorRole.PATIENT, body.email, body.password, profile.id)
        except DuplicateEmail as exc:
            raise ApiError(409, "duplicate_email", str(exc)) from exc
        return {"id": profile.id}

    @app.post("/doctors", status_code=201)
    def register_doctor(body: DoctorRegistration, services: Services = services_dep):
        profile = services.diary.create_doctor(
            name=body.name, center=body.center, contact=body.contact
        )
        try:
            services.auth.register(AuthorRole.DOCTOR, body.email, body.password, profile.id)
        except DuplicateEmail as exc:
            raise ApiError(409, "duplicate_email", str(exc)) from exc
        return {"id": profile.id, "center": profile.center}

    # -- authentication -------------------------------------------------------

    @app.post("/auth/login")
    def login(body: LoginRequest, services: Services = services_dep):
        token = services.auth.login(body.email, body.password)
        if token is None:
            raise ApiError(401, "invalid_credentials", "invalid email or password")
        principal = services.auth.authenticate(token)
        return {"token": token, "role": principal.role.value, "principal_id": principal.id}

    @app.post("/auth/otp/request", status_code=202)
    def otp_request(body: OtpRequest, services: Services = services_dep):
        try:
            services.auth.otp_request(body.email, services.mailer)
        except UnknownEmail as exc:
            raise not_found(f"no account for {body.email}") from exc
        except RateLimited as exc:
            raise ApiError(429, "rate_limited", "too many codes requested; try later") from exc
        return {"status": "sent"}

    @app.post("/auth/otp/verify")
    def otp_verify(body: OtpVerify, services: Services = services_dep):
        token = services.auth.otp_verify(body.email, body.code)
        if token is None:
            raise ApiError(401, "invalid_code", "wrong, expired or used code")
        principal = services.auth.authenticate(token)
        return {"token": token, "role": principal.role.value, "principal_id": principal.id}

    # -- diary writes ------------------------------------------------------------

    @app.post("/patients/{patient_id}/entries", status_code=201)
    def post_entry(
        patient_id: str,
        body: EntryBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_write_access(principal, patient)
        relapse_before = scan_state(services.diary.entry_sequence(patient_id))
        with diary_errors():
            entry = services.diary.record_entry(
                patient_id, body.date, body.grade, body.symptoms, author_role=principal.role
            )
        history = services.diary.entry_sequence(patient_id)
        events = evaluate_entry_triggers(entry, history, relapse_before)
        _dispatch(services, events)
        payload = entry_payload(entry, relapse=scan_state(history))
        payload["events"] = [event.to_dict() for event in events]
        return payload

    @app.post("/patients/{patient_id}/measurements", status_code=201)
    def post_measurement(
        patient_id: str,
        body: MeasurementBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        with diary_errors():
            measurement = services.diary.record_measurement(
                principal.id,
                patient_id,
                body.date,
                systolic=body.systolic,
                diastolic=body.diastolic,
                height_cm=body.height_cm,
                weight_kg=body.weight_kg,
                comments=body.comments,
                onset_category=body.onset_category,
            )
        height_hint = services.assessor.latest_height(services.diary.measurements(patient_id))
        assessments = services.assessor.measurement_assessments(patient, measurement, height_hint)
        events = evaluate_measurement_triggers(measurement, assessments)
        _dispatch(services, events)
        payload = measurement_payload(services, patient, measurement)
        payload["events"] = [event.to_dict() for event in events]
        return payload

    @app.post("/patients/{patient_id}/prescriptions", status_code=201)
    def post_prescription(
        patient_id: str,
        body: PrescriptionBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        with diary_errors():
            prescription = services.diary.create_prescription(
                principal.id,
                patient_id,
                medicine_name=body.medicine_name,
                category=body.category,
                dose=body.dose,
                dose_unit=body.dose_unit,
                frequency_per_day=body.frequency_per_day,
                start=body.start,
                end=body.end,
            )
        event = make_event(
            patient_id,
            NotificationKind.MEDICINE_UPDATED,
            prescription.id,
            f"Prescription added: {prescription.medicine_name}",
            services.clock(),
        )
        _dispatch(services, [event])
        payload = prescription_payload(prescription)
        payload["events"] = [event.to_dict()]
        return payload

    @app.patch("/patients/{patient_id}/prescriptions/{prescription_id}")
    def patch_prescription(
        patient_id: str,
        prescription_id: str,
        body: PrescriptionUpdate,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        with diary_errors():
            prescription = services.diary.update_prescription(
                principal.id,
                patient_id,
                prescription_id,
                dose=body.dose,
                dose_unit=body.dose_unit,
                frequency_per_day=body.frequency_per_day,
                end=body.end,
            )
        event = make_event(
            patient_id,
            NotificationKind.MEDICINE_UPDATED,
            f"{prescription.id}:update:{services.clock().isoformat()}",
            f"Prescription updated: {prescription.medicine_name}",
            services.clock(),
        )
        _dispatch(services, [event])
        return prescription_payload(prescription)

    @app.post("/patients/{patient_id}/doses", status_code=201)
    def post_dose(
        patient_id: str,
        body: DoseBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_write_access(principal, patient)
        with diary_errors():
            event = services.diary.record_dose(
                patient_id, body.prescription_id, body.date, body.taken
            )
        return dose_payload(services, event)

    @app.post("/patients/{patient_id}/reports", status_code=201)
    def post_report(
        patient_id: str,
        body: ReportBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_write_access(principal, patient)
        try:
            content = base64.b64decode(body.content_base64, validate=True)
        except (binascii.Error, ValueError) as exc:
            raise ApiError(422, "validation", "content_base64 is not valid base64") from exc
        with diary_errors():
            report = services.diary.add_report(patient_id, content, body.media_type)
        return report.to_dict()

    @app.post("/patients/{patient_id}/advice", status_code=201)
    def post_advice(
        patient_id: str,
        body: AdviceBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_write_access(principal, patient)
        with diary_errors():
            advice = services.diary.add_advice(patient_id, body.text, principal.role)
        return advice.to_dict()

    @app.post("/patients/{patient_id}/tests", status_code=201)
    def post_tests(
        patient_id: str,
        body: TestOrderBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        with diary_errors():
            order = services.diary.add_test_order(
                principal.id, patient_id, body.tests, body.comments
            )
        event = make_event(
            patient_id,
            NotificationKind.TEST_ORDERED,
            order.id,
            f"Tests advised: {', '.join(order.tests)}",
            services.clock(),
        )
        _dispatch(services, [event])
        payload = order.to_dict()
        payload["events"] = [event.to_dict()]
        return payload

    @app.post("/patients/{patient_id}/notify", status_code=202)
    def post_notify(
        patient_id: str,
        body: NotifyBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        event = make_event(
            patient_id,
            NotificationKind.DOCTOR_ADVICE,
            new_source_id(),
            body.body,
            services.clock(),
            key=body.idempotency_key,
        )
        _dispatch(services, [event])
        return {"status": "queued", "event": event.to_dict()}

    @app.post("/patients/{patient_id}/transfer")
    def post_transfer(
        patient_id: str,
        body: TransferBody,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_patient_self(principal, patient)
        with diary_errors():
            updated = services.diary.transfer_patient(patient_id, body.new_doctor_id)
        return patient_payload(services, updated)

    @app.post("/patients/{patient_id}/verify")
    def post_verify(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        with diary_errors():
            updated = services.diary.verify_patient(principal.id, patient_id)
        return patient_payload(services, updated)

    @app.patch("/patients/{patient_id}")
    def patch_patient(
        patient_id: str,
        body: PatientPatch,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_linked_doctor(principal, patient)
        if body.history_notes is not None:
            with diary_errors():
                patient = services.diary.set_history_notes(
                    principal.id, patient_id, body.history_notes
                )
        return patient_payload(services, patient)

    # -- reads ---------------------------------------------------------------

    @app.get("/patients/{patient_id}")
    def get_patient(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        return patient_payload(services, patient)

    @app.get("/patients/{patient_id}/timeline")
    def get_timeline(
        patient_id: str,
        start: date | None = None,
        end: date | None = None,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        items = services.diary.timeline(patient_id, start=start, end=end)
        return {"items": [timeline_item_payload(services, patient, item) for item in items]}

    @app.get("/patients/{patient_id}/export.csv")
    def get_export(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        document = services.diary.export_csv(patient_id)
        return Response(
            content=document.encode("utf-8"),
            media_type="text/csv",
            headers={"Content-Disposition": 'attachment; filename="diary.csv"'},
        )

    @app.get("/patients/{patient_id}/notifications")
    def get_patient_notifications(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        return {"events": services.feed.list_events(patient_id)}

    @app.get("/notifications")
    def get_own_notifications(
        services: Services = services_dep, principal: Principal = principal_dep
    ):
        return {"events": services.feed.list_events(principal.id)}

    @app.get("/patients/{patient_id}/prescriptions")
    def get_prescriptions(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        return {
            "prescriptions": [prescription_payload(p) for p in services.diary.prescriptions(patient_id)]
        }

    @app.get("/patients/{patient_id}/reports")
    def get_reports(
        patient_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        return {"reports": [r.to_dict() for r in services.diary.reports(patient_id)]}

    @app.get("/patients/{patient_id}/reports/{report_id}/content")
    def get_report_content(
        patient_id: str,
        report_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        patient = _get_patient(services, patient_id)
        _require_read_access(principal, patient)
        with diary_errors():
            content, media_type = services.diary.report_content(patient_id, report_id)
        return Response(content=content, media_type=media_type)

    # -- doctor views -----------------------------------------------------------

    @app.get("/doctors/{doctor_id}/patients")
    def get_doctor_patients(
        doctor_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        _require_doctor_self(principal, doctor_id)
        with diary_errors():
            patients = services.diary.list_patients_of(doctor_id)
        return {"patients": [patient_payload(services, p) for p in patients]}

    @app.get("/doctors/{doctor_id}/overview")
    def get_doctor_overview(
        doctor_id: str,
        services: Services = services_dep,
        principal: Principal = principal_dep,
    ):
        _require_doctor_self(principal, doctor_id)
        with diary_errors():
            patients = services.diary.list_patients_of(doctor_id)
        counts = {"SSNS": 0, "SRNS_IR": 0, "SRNS_LR": 0, "Unassigned": 0}
        critical = 0
        for profile in patients:
            counts[profile.onset_category.value] += 1
            if services.assessor.snapshot(services.diary, profile).critical:
                critical += 1
        return {
            "category_counts": counts,
            "critical_count": critical,
            "total": len(patients),
        }

    # -- misc ---------------------------------------------------------------------

    @app.get("/hospitals/nearby")
    def get_hospitals(
        services: Services = services_dep, principal: Principal = principal_dep
    ):
        return services.hospitals

    if app.state.services.config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/", StaticFiles(directory=app.state.services.config.static_dir, html=True)
        )

    return app


def _require_doctor_self(principal: Principal, doctor_id: str) -> None:
    if principal.role is not AuthorRole.DOCTOR or principal.id != doctor_id:
        raise forbidden("doctors may only view their own roster")


def new_source_id() -> str:
    from ..diary.models import new_id

    return new_id()
