// SVG renderers. Point colors arrive from the API and are applied
// verbatim; nothing in this module inspects clinical values to choose
// a color.

import type { ChartPoint, ChartSeries, Overview } from "./types.js";
import { escapeHtml } from "./dom.js";

const WIDTH = 560;
const HEIGHT = 180;
const PAD_LEFT = 44;
const PAD_BOTTOM = 24;
const PAD_TOP = 14;
const PAD_RIGHT = 12;

const SEVERITY_FILL: Record<string, string> = {
  green: "var(--ok)",
  yellow: "var(--warn)",
  red: "var(--alert)",
  none: "var(--muted)",
};

function dayNumber(iso: string): number {
  return Date.parse(iso + "T00:00:00Z") / 86_400_000;
}

interface Scale {
  x(day: number): number;
  y(value: number): number;
}

function makeScale(points: ChartPoint[]): Scale {
  const days = points.map((p) => dayNumber(p.date));
  const values = points.map((p) => p.value);
  const dayMin = Math.min(...days);
  const daySpan = Math.max(Math.max(...days) - dayMin, 1);
  const valueMin = Math.min(...values, 0);
  const valueSpan = Math.max(Math.max(...values) - valueMin, 1);
  const innerW = WIDTH - PAD_LEFT - PAD_RIGHT;
  const innerH = HEIGHT - PAD_TOP - PAD_BOTTOM;
  return {
    x: (day) => PAD_LEFT + ((day - dayMin) / daySpan) * innerW,
    y: (value) => PAD_TOP + innerH - ((value - valueMin) / valueSpan) * innerH,
  };
}

export function renderSeriesChart(series: ChartSeries): string {
  if (series.points.length === 0) {
    return `<div class="chart chart-empty" data-metric="${series.metric}">` +
      `<h3>${escapeHtml(series.title)}</h3><p class="empty">No data yet</p></div>`;
  }
  const scale = makeScale(series.points);
  const path = series.points
    .map((p, i) => `${i === 0 ? "M" : "L"}${scale.x(dayNumber(p.date)).toFixed(1)},${scale.y(p.value).toFixed(1)}`)
    .join(" ");
  const dots = series.points
    .map((p) => {
      const cx = scale.x(dayNumber(p.date)).toFixed(1);
      const cy = scale.y(p.value).toFixed(1);
      const fill = SEVERITY_FILL[p.color] ?? p.color;
      const title = `${p.date}: ${p.label ?? p.value}`;
      return (
        `<circle cx="${cx}" cy="${cy}" r="4.5" fill="${fill}" data-color="${p.color}" ` +
        `data-date="${p.date}"><title>${escapeHtml(title)}</title></circle>`
      );
    })
    .join("");
  const labels = axisLabels(series.points, scale);
  return (
    `<div class="chart" data-metric="${series.metric}">` +
    `<h3>${escapeHtml(series.title)}</h3>` +
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="${escapeHtml(series.title)}">` +
    `<path d="${path}" fill="none" stroke="var(--line)" stroke-width="1.5"/>` +
    dots +
    labels +
    `</svg></div>`
  );
}

function axisLabels(points: ChartPoint[], scale: Scale): string {
  const first = points[0];
  const last = points[points.length - 1];
  const values = points.map((p) => p.value);
  const top = Math.max(...values);
  return (
    `<text x="${PAD_LEFT}" y="${HEIGHT - 6}" class="axis">${first.date}</text>` +
    `<text x="${WIDTH - PAD_RIGHT}" y="${HEIGHT - 6}" class="axis" text-anchor="end">${last.date}</text>` +
    `<text x="6" y="${scale.y(top).toFixed(1)}" class="axis">${top}</text>`
  );
}

// Doughnut: one segment per disease category, sized straight from the
// overview payload counts.

const CATEGORY_ORDER = ["SSNS", "SRNS_IR", "SRNS_LR", "Unassigned"] as const;
const CATEGORY_CLASS: Record<string, string> = {
  SSNS: "seg-ssns",
  SRNS_IR: "seg-srns-ir",
  SRNS_LR: "seg-srns-lr",
  Unassigned: "seg-unassigned",
};

export function renderDoughnut(overview: Overview): string {
  const radius = 70;
  const cx = 90;
  const cy = 90;
  const circumference = 2 * Math.PI * radius;
  const total = Math.max(overview.total, 1);
  let offset = 0;
  const segments = CATEGORY_ORDER.map((category) => {
    const count = overview.category_counts[category] ?? 0;
    const length = (count / total) * circumference;
    const segment =
      `<circle class="segment ${CATEGORY_CLASS[category]}" data-category="${category}" ` +
      `data-count="${count}" cx="${cx}" cy="${cy}" r="${radius}" fill="none" stroke-width="26" ` +
      `stroke-dasharray="${length.toFixed(2)} ${(circumference - length).toFixed(2)}" ` +
      `stroke-dashoffset="${(-offset).toFixed(2)}"/>`;
    offset += length;
    return segment;
  }).join("");
  return (
    `<svg class="doughnut" viewBox="0 0 180 180" role="img" aria-label="Patient categories">` +
    segments +
    `<text x="${cx}" y="${cy - 4}" text-anchor="middle" class="doughnut-total">${overview.total}</text>` +
    `<text x="${cx}" y="${cy + 16}" text-anchor="middle" class="doughnut-critical" ` +
    `data-critical="${overview.critical_count}">${overview.critical_count} critical</text>` +
    `</svg>`
  );
}

export function doughnutLegend(overview: Overview): string {
  const rows = CATEGORY_ORDER.map(
    (category) =>
      `<li><span class="swatch ${CATEGORY_CLASS[category]}"></span>` +
      `${category}: ${overview.category_counts[category] ?? 0}</li>`,
  ).join("");
  return `<ul class="legend">${rows}</ul>`;
}
