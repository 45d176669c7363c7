import { describe, expect, it } from "vitest";

import { buildSeries } from "../src/series.js";
import type { TimelineItem } from "../src/types.js";

const items: TimelineItem[] = [
  {
    kind: "entry",
    date: "2024-06-10",
    created_at: "2024-06-10T08:00:00+00:00",
    record: {
      id: "e1",
      date: "2024-06-10",
      grade: "3+",
      symptoms: "",
      color: "red",
      nominal_mg_dl: 300,
      created_at: "2024-06-10T08:00:00+00:00",
    },
  },
  {
    kind: "measurement",
    date: "2024-06-11",
    created_at: "2024-06-11T08:00:00+00:00",
    record: {
      id: "m1",
      date: "2024-06-11",
      systolic: 104,
      diastolic: 66,
      height_cm: 121.5,
      weight_kg: 23,
      bmi: 15.6,
      bp_stage: "stage1",
      bp_color: "yellow",
      growth: {
        height: { z: -0.1, band: "green" },
        weight: { z: 1.2, band: "yellow" },
        bmi: { z: -2.2, band: "red" },
      },
      comments: "",
      created_at: "2024-06-11T08:00:00+00:00",
    },
  },
  {
    kind: "dose_event",
    date: "2024-06-11",
    created_at: "2024-06-11T09:00:00+00:00",
    record: {
      id: "d1",
      prescription_id: "rx1",
      date: "2024-06-11",
      taken: true,
      color: "green",
      recorded_at: "2024-06-11T09:00:00+00:00",
    },
  },
  {
    kind: "notification",
    date: "2024-06-11",
    created_at: "2024-06-11T09:05:00+00:00",
    record: { id: "n1", kind: "heavy_proteinuria", body: "alert" },
  },
];

describe("buildSeries", () => {
  const byMetric = Object.fromEntries(buildSeries(items).map((s) => [s.metric, s]));

  it("copies API colors verbatim onto every point", () => {
    expect(byMetric.urine_protein.points[0].color).toBe("red");
    expect(byMetric.systolic.points[0].color).toBe("yellow");
    expect(byMetric.diastolic.points[0].color).toBe("yellow");
    expect(byMetric.height.points[0].color).toBe("green");
    expect(byMetric.weight.points[0].color).toBe("yellow");
    expect(byMetric.bmi.points[0].color).toBe("red");
    expect(byMetric.dose.points[0].color).toBe("green");
  });

  it("positions urine grades on the display scale", () => {
    expect(byMetric.urine_protein.points[0].value).toBe(4); // "3+" sits at index 4
    expect(byMetric.urine_protein.points[0].label).toBe("3+");
  });

  it("takes measurement values as-is", () => {
    expect(byMetric.systolic.points[0].value).toBe(104);
    expect(byMetric.height.points[0].value).toBe(121.5);
    expect(byMetric.bmi.points[0].value).toBe(15.6);
  });

  it("ignores notifications and missing metrics", () => {
    const sparse = buildSeries([
      {
        kind: "measurement",
        date: "2024-06-11",
        created_at: "2024-06-11T08:00:00+00:00",
        record: {
          id: "m2",
          date: "2024-06-11",
          systolic: null,
          diastolic: null,
          height_cm: null,
          weight_kg: null,
          bmi: null,
          bp_stage: null,
          bp_color: null,
          growth: {},
          comments: "",
          created_at: "2024-06-11T08:00:00+00:00",
        },
      },
    ]);
    expect(sparse.every((s) => s.points.length === 0)).toBe(true);
  });

  it("marks points without an API band as unassessed, not green", () => {
    const series = buildSeries([
      {
        kind: "measurement",
        date: "2024-06-11",
        created_at: "2024-06-11T08:00:00+00:00",
        record: {
          id: "m3",
          date: "2024-06-11",
          systolic: null,
          diastolic: null,
          height_cm: 50,
          weight_kg: null,
          bmi: null,
          bp_stage: null,
          bp_color: null,
          growth: {},
          comments: "",
          created_at: "2024-06-11T08:00:00+00:00",
        },
      },
    ]);
    const height = series.find((s) => s.metric === "height")!;
    expect(height.points[0].color).toBe("none");
  });
});
