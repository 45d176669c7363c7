import { describe, expect, it } from "vitest";

import { doughnutLegend, renderDoughnut, renderSeriesChart } from "../src/charts.js";
import type { ChartSeries, Overview } from "../src/types.js";

const series: ChartSeries = {
  metric: "urine_protein",
  title: "Urine protein",
  points: [
    { date: "2024-06-10", value: 4, color: "red", label: "3+" },
    { date: "2024-06-11", value: 2, color: "yellow", label: "1+" },
    { date: "2024-06-12", value: 0, color: "green", label: "negative" },
  ],
};

describe("series chart", () => {
  it("renders one marker per point with the API color verbatim", () => {
    const svg = renderSeriesChart(series);
    const colors = [...svg.matchAll(/data-color="([a-z]+)"/g)].map((m) => m[1]);
    expect(colors).toEqual(["red", "yellow", "green"]);
    expect(svg.match(/<circle /g)).toHaveLength(3);
  });

  it("maps severities onto the palette variables without recomputing", () => {
    const svg = renderSeriesChart(series);
    expect(svg).toContain('fill="var(--alert)" data-color="red"');
    expect(svg).toContain('fill="var(--warn)" data-color="yellow"');
    expect(svg).toContain('fill="var(--ok)" data-color="green"');
  });

  it("renders unassessed points with the neutral fill", () => {
    const svg = renderSeriesChart({
      metric: "height",
      title: "Height",
      points: [{ date: "2024-06-10", value: 120, color: "none" }],
    });
    expect(svg).toContain('fill="var(--muted)" data-color="none"');
  });

  it("shows an empty state when there are no points", () => {
    const html = renderSeriesChart({ metric: "bmi", title: "BMI", points: [] });
    expect(html).toContain("No data yet");
    expect(html).not.toContain("<svg");
  });

  it("escapes titles", () => {
    const html = renderSeriesChart({
      metric: "bmi",
      title: "<script>alert(1)</script>",
      points: [],
    });
    expect(html).not.toContain("<script>");
  });
});

const overview: Overview = {
  category_counts: { SSNS: 3, SRNS_IR: 1, SRNS_LR: 0, Unassigned: 2 },
  critical_count: 1,
  total: 6,
};

describe("doughnut", () => {
  it("renders exactly one segment per category with payload counts", () => {
    const svg = renderDoughnut(overview);
    const segments = [...svg.matchAll(/data-category="(\w+)" data-count="(\d+)"/g)].map(
      (m) => [m[1], Number(m[2])],
    );
    expect(segments).toEqual([
      ["SSNS", 3],
      ["SRNS_IR", 1],
      ["SRNS_LR", 0],
      ["Unassigned", 2],
    ]);
  });

  it("segment arc lengths are proportional to the payload", () => {
    const svg = renderDoughnut(overview);
    const dashes = [...svg.matchAll(/stroke-dasharray="([\d.]+) /g)].map((m) =>
      Number(m[1]),
    );
    const circumference = 2 * Math.PI * 70;
    expect(dashes[0]).toBeCloseTo((3 / 6) * circumference, 1);
    expect(dashes[1]).toBeCloseTo((1 / 6) * circumference, 1);
    expect(dashes[2]).toBeCloseTo(0, 5);
    expect(dashes[3]).toBeCloseTo((2 / 6) * circumference, 1);
  });

  it("shows the critical count from the payload", () => {
    const svg = renderDoughnut(overview);
    expect(svg).toContain('data-critical="1"');
    expect(svg).toContain("1 critical");
  });

  it("legend echoes the counts", () => {
    const html = doughnutLegend(overview);
    expect(html).toContain("SSNS: 3");
    expect(html).toContain("Unassigned: 2");
  });
});
