// Builds chart series from timeline items. Colors are copied from the
// API records; values are only positioned on a display scale, never
// classified here.

import type {
  ChartSeries,
  DoseRecord,
  EntryRecord,
  MeasurementRecord,
  Severity,
  TimelineItem,
} from "./types.js";

// position of each grade label on the urine-protein display axis
const GRADE_SCALE = ["negative", "trace", "1+", "2+", "3+", "4+"];

function asColor(value: unknown): Severity | "none" {
  return value === "green" || value === "yellow" || value === "red" ? value : "none";
}

export function buildSeries(items: TimelineItem[]): ChartSeries[] {
  const urine: ChartSeries = { metric: "urine_protein", title: "Urine protein", points: [] };
  const dose: ChartSeries = { metric: "dose", title: "Medicine doses", points: [] };
  const systolic: ChartSeries = { metric: "systolic", title: "Systolic BP", points: [] };
  const diastolic: ChartSeries = { metric: "diastolic", title: "Diastolic BP", points: [] };
  const height: ChartSeries = { metric: "height", title: "Height", points: [] };
  const weight: ChartSeries = { metric: "weight", title: "Weight", points: [] };
  const bmi: ChartSeries = { metric: "bmi", title: "BMI", points: [] };

  for (const item of items) {
    if (item.kind === "entry") {
      const record = item.record as unknown as EntryRecord;
      urine.points.push({
        date: record.date,
        value: GRADE_SCALE.indexOf(record.grade),
        color: asColor(record.color),
        label: record.grade,
      });
    } else if (item.kind === "dose_event") {
      const record = item.record as unknown as DoseRecord;
      dose.points.push({
        date: record.date,
        value: record.taken ? 1 : 0,
        color: asColor(record.color),
        label: record.taken ? "taken" : "missed",
      });
    } else if (item.kind === "measurement") {
      const record = item.record as unknown as MeasurementRecord;
      const bpColor = asColor(record.bp_color);
      if (record.systolic !== null && record.systolic !== undefined) {
        systolic.points.push({
          date: record.date,
          value: record.systolic,
          color: bpColor,
          label: `${record.systolic} mmHg (${record.bp_stage ?? "unstaged"})`,
        });
      }
      if (record.diastolic !== null && record.diastolic !== undefined) {
        diastolic.points.push({
          date: record.date,
          value: record.diastolic,
          color: bpColor,
          label: `${record.diastolic} mmHg (${record.bp_stage ?? "unstaged"})`,
        });
      }
      if (record.height_cm !== null && record.height_cm !== undefined) {
        height.points.push({
          date: record.date,
          value: record.height_cm,
          color: asColor(record.growth?.height?.band),
          label: `${record.height_cm} cm`,
        });
      }
      if (record.weight_kg !== null && record.weight_kg !== undefined) {
        weight.points.push({
          date: record.date,
          value: record.weight_kg,
          color: asColor(record.growth?.weight?.band),
          label: `${record.weight_kg} kg`,
        });
      }
      if (record.bmi !== null && record.bmi !== undefined) {
        bmi.points.push({
          date: record.date,
          value: record.bmi,
          color: asColor(record.growth?.bmi?.band),
          label: `${record.bmi} kg/m²`,
        });
      }
    }
  }

  return [urine, dose, systolic, diastolic, height, weight, bmi];
}
