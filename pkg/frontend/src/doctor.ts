// Physician dashboard renderers: category doughnut with critical count,
// the patient roster with verified ticks and warning badges, and the
// per-patient detail shell with its action tabs.

import type { ApiClient } from "./api.js";
import { doughnutLegend, renderDoughnut } from "./charts.js";
import { escapeHtml } from "./dom.js";
import { t } from "./strings.js";
import type { Overview, PatientProfile } from "./types.js";

export function renderOverviewPanel(overview: Overview): string {
  return (
    `<section class="overview"><h2>${t("doctor.overview")}</h2>` +
    renderDoughnut(overview) +
    doughnutLegend(overview) +
    `</section>`
  );
}

export function renderRoster(patients: PatientProfile[]): string {
  if (patients.length === 0) return `<p class="empty">No registered patients.</p>`;
  const rows = patients
    .map((p) => {
      const tick = p.verified ? `<span class="tick" title="verified">&#10003;</span>` : "";
      const badge = p.critical
        ? `<span class="badge badge-critical">&#9888;</span>`
        : "";
      return (
        `<li class="roster-row" data-patient="${p.id}" data-critical="${p.critical}">` +
        `<a href="#/doctor/patient/${p.id}">${escapeHtml(p.name)}</a> ${tick} ${badge} ` +
        `<span class="category">${p.onset_category}</span></li>`
      );
    })
    .join("");
  return `<h2>${t("doctor.patients")}</h2><ul class="roster">${rows}</ul>`;
}

export function renderDetailTabs(): string {
  const tabs = ["charts", "reports", "advice", "tests", "details"]
    .map(
      (name, index) =>
        `<button class="tab${index === 0 ? " active" : ""}" data-tab="${name}">` +
        `${name[0].toUpperCase()}${name.slice(1)}</button>`,
    )
    .join("");
  return `<nav class="tabs">${tabs}</nav>`;
}

export function renderPatientActions(api: ApiClient, patient: PatientProfile): string {
  const phone = `tel:+000000000`; // the profile has no number; doctors dial the center
  return (
    `<div class="actions">` +
    `<form id="notify-form" class="inline">` +
    `<input type="text" id="notify-body" placeholder="Message to caregiver" required>` +
    `<button type="submit" id="notify-button">${t("notify.send")}</button>` +
    `</form>` +
    `<a class="button" href="${api.exportUrl(patient.id)}" download>${t("download.csv")}</a>` +
    `<a class="button" href="${phone}">Call</a>` +
    (patient.verified
      ? ""
      : `<button id="verify-button" data-patient="${patient.id}">Verify patient</button>`) +
    `</div><div id="notify-feedback"></div>`
  );
}

export function renderDetailsTab(patient: PatientProfile): string {
  return (
    `<dl class="details">` +
    `<dt>Name</dt><dd>${escapeHtml(patient.name)}</dd>` +
    `<dt>Date of birth</dt><dd>${patient.date_of_birth}</dd>` +
    `<dt>Category</dt><dd>${patient.onset_category}</dd>` +
    `<dt>Relapse status</dt><dd>${patient.relapse.status}` +
    (patient.relapse.onset_date ? ` since ${patient.relapse.onset_date}` : "") +
    `</dd>` +
    `<dt>History</dt><dd>${escapeHtml(patient.history_notes || "—")}</dd>` +
    `</dl>`
  );
}
