// Thin typed client over the REST API. fetch is injectable for tests.

import type {
  Hospital,
  NotificationEvent,
  Overview,
  PatientProfile,
  Prescription,
  Session,
  TimelineItem,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function raiseForError(response: Response): Promise<void> {
  if (response.ok) return;
  let code = "error";
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  token: string | null = null;

  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    await raiseForError(response);
    return (await response.json()) as T;
  }

  get<T>(path: string): Promise<T> {
    return this.request<T>("GET", path);
  }

  post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>("POST", path, body);
  }

  // -- auth ------------------------------------------------------------

  async login(email: string, password: string): Promise<Session> {
    const session = await this.post<Session>("/auth/login", { email, password });
    this.token = session.token;
    return session;
  }

  registerPatient(body: Record<string, unknown>): Promise<{ id: string }> {
    return this.post("/patients", body);
  }

  registerDoctor(body: Record<string, unknown>): Promise<{ id: string }> {
    return this.post("/doctors", body);
  }

  // -- patient data -------------------------------------------------------

  patient(id: string): Promise<PatientProfile> {
    return this.get(`/patients/${id}`);
  }

  timeline(id: string): Promise<{ items: TimelineItem[] }> {
    return this.get(`/patients/${id}/timeline`);
  }

  notifications(): Promise<{ events: NotificationEvent[] }> {
    return this.get("/notifications");
  }

  prescriptions(id: string): Promise<{ prescriptions: Prescription[] }> {
    return this.get(`/patients/${id}/prescriptions`);
  }

  hospitals(): Promise<Hospital[]> {
    return this.get("/hospitals/nearby");
  }

  postEntry(id: string, body: { date: string; grade: string; symptoms: string }) {
    return this.post<Record<string, unknown>>(`/patients/${id}/entries`, body);
  }

  postDose(id: string, body: { prescription_id: string; date: string; taken: boolean }) {
    return this.post<Record<string, unknown>>(`/patients/${id}/doses`, body);
  }

  transfer(id: string, newDoctorId: string) {
    return this.post<PatientProfile>(`/patients/${id}/transfer`, {
      new_doctor_id: newDoctorId,
    });
  }

  // -- doctor data ----------------------------------------------------------

  overview(doctorId: string): Promise<Overview> {
    return this.get(`/doctors/${doctorId}/overview`);
  }

  roster(doctorId: string): Promise<{ patients: PatientProfile[] }> {
    return this.get(`/doctors/${doctorId}/patients`);
  }

  notify(patientId: string, body: string, idempotencyKey: string) {
    return this.post<Record<string, unknown>>(`/patients/${patientId}/notify`, {
      body,
      idempotency_key: idempotencyKey,
    });
  }

  advise(patientId: string, text: string) {
    return this.post<Record<string, unknown>>(`/patients/${patientId}/advice`, { text });
  }

  orderTests(patientId: string, tests: string[], comments: string) {
    return this.post<Record<string, unknown>>(`/patients/${patientId}/tests`, {
      tests,
      comments,
    });
  }

  verifyPatient(patientId: string) {
    return this.post<PatientProfile>(`/patients/${patientId}/verify`, undefined);
  }

  exportUrl(patientId: string): string {
    return `${this.baseUrl}/patients/${patientId}/export.csv`;
  }
}
