// Shapes of the JSON payloads served by the backend. The UI never derives
// clinical colors or stages itself; it renders these fields verbatim.

export type Severity = "green" | "yellow" | "red";
export type Role = "patient" | "doctor";

export interface Session {
  token: string;
  role: Role;
  principal_id: string;
}

export interface RelapseInfo {
  status: "no_relapse" | "suspected" | "relapse";
  suspect_count: number;
  onset_date: string | null;
}

export interface PatientProfile {
  id: string;
  name: string;
  date_of_birth: string;
  sex: "F" | "M";
  onset_category: "SSNS" | "SRNS_IR" | "SRNS_LR" | "Unassigned";
  doctor_id: string | null;
  verified: boolean;
  history_notes: string;
  critical: boolean;
  relapse: RelapseInfo;
}

export interface EntryRecord {
  id: string;
  date: string;
  grade: string;
  symptoms: string;
  color: Severity;
  nominal_mg_dl: number | null;
  created_at: string;
}

export interface GrowthResult {
  z: number;
  band: Severity;
}

export interface MeasurementRecord {
  id: string;
  date: string;
  systolic: number | null;
  diastolic: number | null;
  height_cm: number | null;
  weight_kg: number | null;
  bmi: number | null;
  bp_stage: string | null;
  bp_color: Severity | null;
  growth: Partial<Record<"height" | "weight" | "bmi", GrowthResult>>;
  comments: string;
  created_at: string;
}

export interface DoseRecord {
  id: string;
  prescription_id: string;
  date: string;
  taken: boolean;
  color: Severity;
  recorded_at: string;
}

export interface TimelineItem {
  kind: "entry" | "measurement" | "dose_event" | "advice" | "test_order" | "notification";
  date: string;
  created_at: string;
  record: Record<string, unknown>;
}

export interface NotificationEvent {
  id: string;
  kind: string;
  recipient_role: string;
  patient_id: string;
  body: string;
  created_at: string;
  idempotency_key: string;
}

export interface Overview {
  category_counts: Record<"SSNS" | "SRNS_IR" | "SRNS_LR" | "Unassigned", number>;
  critical_count: number;
  total: number;
}

export interface Prescription {
  id: string;
  medicine_name: string;
  category: "steroid" | "other";
  dose: number;
  dose_unit: string;
  frequency_per_day: number;
  start: string;
  end: string | null;
}

export interface Hospital {
  name: string;
  address: string;
  phone: string;
  lat: number;
  lon: number;
}

export type ChartMetric =
  | "urine_protein"
  | "dose"
  | "systolic"
  | "diastolic"
  | "height"
  | "weight"
  | "bmi";

export interface ChartPoint {
  date: string;
  value: number;
  // a severity from the API, or "none" when the API supplied no band
  color: Severity | "none";
  label?: string;
}

export interface ChartSeries {
  metric: ChartMetric;
  title: string;
  points: ChartPoint[];
}
