// Patient dashboard renderers: header badge, charts, data table,
// medicines, notifications, hospitals. All functions return HTML strings;
// main.ts wires them into the page.

import { renderSeriesChart } from "./charts.js";
import { escapeHtml } from "./dom.js";
import { buildSeries } from "./series.js";
import { t } from "./strings.js";
import type {
  Hospital,
  NotificationEvent,
  PatientProfile,
  Prescription,
  TimelineItem,
} from "./types.js";

export function renderBadge(profile: PatientProfile): string {
  if (profile.critical) {
    return `<span class="badge badge-critical" title="${escapeHtml(
      `relapse: ${profile.relapse.status}`,
    )}">&#9888; ${t("badge.critical")}</span>`;
  }
  return `<span class="badge badge-ok">&#10003; ${t("badge.healthy")}</span>`;
}

export function renderHeader(profile: PatientProfile): string {
  return (
    `<div class="profile-head">` +
    `<h2>${escapeHtml(profile.name)}</h2>` +
    `<p>${profile.date_of_birth} &middot; ${profile.sex} &middot; ${profile.onset_category}` +
    (profile.verified ? ` &middot; <span class="tick">&#10003; verified</span>` : "") +
    `</p>` +
    renderBadge(profile) +
    `</div>`
  );
}

export function renderCharts(items: TimelineItem[]): string {
  return buildSeries(items)
    .map((series) => renderSeriesChart(series))
    .join("");
}

export function renderAlertBanner(events: { kind: string; body: string }[]): string {
  if (events.length === 0) return "";
  const lines = events
    .map((event) => `<li data-kind="${escapeHtml(event.kind)}">${escapeHtml(event.body)}</li>`)
    .join("");
  return `<div class="alert-banner" role="alert"><strong>${t("alert.banner")}</strong><ul>${lines}</ul></div>`;
}

export function renderEntryForm(): string {
  const grades = ["negative", "trace", "1+", "2+", "3+", "4+"];
  const options = grades.map((g) => `<option value="${g}">${g}</option>`).join("");
  return (
    `<form id="entry-form" class="entry-form">` +
    `<label>Date <input type="date" name="date" required></label>` +
    `<label>Grade <select name="grade">${options}</select></label>` +
    `<label>${t("entry.symptoms")} <input type="text" name="symptoms"></label>` +
    `<button type="submit">${t("entry.submit")}</button>` +
    `</form><div id="entry-feedback"></div>`
  );
}

export function renderDataTable(items: TimelineItem[]): string {
  if (items.length === 0) {
    return `<p class="empty">No data recorded yet.</p>`;
  }
  const rows = items
    .map((item) => {
      const record = item.record as Record<string, unknown>;
      const summary = summarize(item.kind, record);
      return (
        `<tr><td>${item.date}</td><td>${item.kind.replace("_", " ")}</td>` +
        `<td>${summary}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="data-table"><thead><tr><th>Date</th><th>Kind</th><th>Details</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

function summarize(kind: string, record: Record<string, unknown>): string {
  switch (kind) {
    case "entry":
      return escapeHtml(
        `urine ${record.grade}${record.symptoms ? ` — ${record.symptoms}` : ""}`,
      );
    case "measurement": {
      const parts: string[] = [];
      if (record.systolic != null) parts.push(`BP ${record.systolic}/${record.diastolic}`);
      if (record.height_cm != null) parts.push(`height ${record.height_cm} cm`);
      if (record.weight_kg != null) parts.push(`weight ${record.weight_kg} kg`);
      if (record.bmi != null) parts.push(`BMI ${record.bmi}`);
      return escapeHtml(parts.join(", ") || "—");
    }
    case "dose_event":
      return record.taken ? "dose taken" : "dose missed";
    case "advice":
      return escapeHtml(`${record.author_role}: ${record.text}`);
    case "test_order":
      return escapeHtml(`tests: ${(record.tests as string[]).join(", ")}`);
    case "notification":
      return escapeHtml(`${record.kind}: ${record.body}`);
    default:
      return "";
  }
}

export function renderMedicines(prescriptions: Prescription[], today: string): string {
  if (prescriptions.length === 0) return `<p class="empty">No prescriptions.</p>`;
  const rows = prescriptions
    .map(
      (p) =>
        `<li>${escapeHtml(p.medicine_name)} (${p.category}) — ${p.dose} ${escapeHtml(p.dose_unit)}` +
        ` &times; ${p.frequency_per_day}/day ` +
        `<button class="dose-tick" data-prescription="${p.id}" data-date="${today}">` +
        `${t("medicines.taken")}</button></li>`,
    )
    .join("");
  return `<h3>${t("medicines.title")}</h3><ul class="medicines">${rows}</ul>`;
}

export function renderNotifications(events: NotificationEvent[]): string {
  if (events.length === 0) return `<p class="empty">Nothing yet.</p>`;
  const rows = [...events]
    .reverse()
    .map(
      (event) =>
        `<li data-kind="${escapeHtml(event.kind)}"><time>${event.created_at}</time> ` +
        `${escapeHtml(event.body)}</li>`,
    )
    .join("");
  return `<h3>${t("notifications.title")}</h3><ul class="notifications">${rows}</ul>`;
}

export function renderHospitals(hospitals: Hospital[]): string {
  if (hospitals.length === 0) return "";
  const rows = hospitals
    .map(
      (h) =>
        `<tr><td>${escapeHtml(h.name)}</td><td>${escapeHtml(h.address)}</td>` +
        `<td><a href="tel:${escapeHtml(h.phone)}">${escapeHtml(h.phone)}</a></td></tr>`,
    )
    .join("");
  return (
    `<h3>${t("hospitals.title")}</h3>` +
    `<table class="data-table"><thead><tr><th>Name</th><th>Address</th><th>Phone</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}
