// Page bootstrap: session handling, hash routing, 30-second notification
// polling. Rendering itself lives in the view modules.

import { ApiClient, ApiError } from "./api.js";
import { el } from "./dom.js";
import {
  renderDetailTabs,
  renderDetailsTab,
  renderOverviewPanel,
  renderPatientActions,
  renderRoster,
} from "./doctor.js";
import { NotifySubmitter } from "./notify.js";
import {
  renderAlertBanner,
  renderCharts,
  renderDataTable,
  renderEntryForm,
  renderHeader,
  renderHospitals,
  renderMedicines,
  renderNotifications,
} from "./patient.js";
import { t } from "./strings.js";
import type { NotificationEvent, Session } from "./types.js";

const POLL_INTERVAL_MS = 30_000;

const api = new ApiClient("");
let session: Session | null = null;
let pollTimer: number | undefined;

function saveSession(next: Session | null): void {
  session = next;
  api.token = next?.token ?? null;
  if (next) sessionStorage.setItem("session", JSON.stringify(next));
  else sessionStorage.removeItem("session");
}

function restoreSession(): void {
  const raw = sessionStorage.getItem("session");
  if (raw) {
    session = JSON.parse(raw) as Session;
    api.token = session.token;
  }
}

function root(): HTMLElement {
  return el("app");
}

// -- login ------------------------------------------------------------------

function renderLogin(): void {
  root().innerHTML = `
    <section class="login">
      <h1>${t("app.title")}</h1>
      <form id="login-form">
        <label>Email <input type="email" name="email" required></label>
        <label>Password <input type="password" name="password" required></label>
        <button type="submit">${t("login.signin")}</button>
      </form>
      <p id="login-error" class="error" role="alert"></p>
    </section>`;
  el("login-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const data = new FormData(form);
    try {
      const next = await api.login(String(data.get("email")), String(data.get("password")));
      saveSession(next);
      location.hash = next.role === "doctor" ? "#/doctor" : "#/patient";
    } catch (error) {
      el("login-error").textContent =
        error instanceof ApiError ? error.message : "sign-in failed";
    }
  });
}

// -- patient dashboard -----------------------------------------------------------

async function renderPatientDashboard(): Promise<void> {
  if (!session) return renderLogin();
  const patientId = session.principal_id;
  const [profile, timeline, prescriptions, feed, hospitals] = await Promise.all([
    api.patient(patientId),
    api.timeline(patientId),
    api.prescriptions(patientId),
    api.notifications(),
    api.hospitals(),
  ]);
  const today = new Date().toISOString().slice(0, 10);
  root().innerHTML = `
    <header id="patient-header">${renderHeader(profile)}</header>
    <div id="alert-area"></div>
    <section>${renderEntryForm()}</section>
    <section id="charts">${renderCharts(timeline.items)}</section>
    <section id="medicines">${renderMedicines(prescriptions.prescriptions, today)}</section>
    <section id="feed">${renderNotifications(feed.events)}</section>
    <section><h3>${t("table.title")}</h3><div id="table">${renderDataTable(timeline.items)}</div></section>
    <section id="hospitals">${renderHospitals(hospitals)}</section>
    <footer><a class="button" href="${api.exportUrl(patientId)}" download>${t("download.csv")}</a>
    <button id="logout">Sign out</button></footer>`;

  el("entry-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const data = new FormData(form);
    try {
      const result = await api.postEntry(patientId, {
        date: String(data.get("date")),
        grade: String(data.get("grade")),
        symptoms: String(data.get("symptoms") ?? ""),
      });
      const events = (result.events as { kind: string; body: string }[]) ?? [];
      el("alert-area").innerHTML = renderAlertBanner(events);
      el("entry-feedback").textContent = t("entry.saved");
      await refreshPatientSections(patientId);
    } catch (error) {
      el("entry-feedback").textContent =
        error instanceof ApiError ? error.message : "offline? retry in a moment";
    }
  });
  root().addEventListener("click", async (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("dose-tick")) {
      await api.postDose(patientId, {
        prescription_id: target.dataset.prescription!,
        date: target.dataset.date!,
        taken: true,
      });
      await refreshPatientSections(patientId);
    }
    if (target.id === "logout") {
      saveSession(null);
      location.hash = "#/";
    }
  });
  startPolling();
}

async function refreshPatientSections(patientId: string): Promise<void> {
  const [profile, timeline, feed] = await Promise.all([
    api.patient(patientId),
    api.timeline(patientId),
    api.notifications(),
  ]);
  el("patient-header").innerHTML = renderHeader(profile);
  el("charts").innerHTML = renderCharts(timeline.items);
  el("table").innerHTML = renderDataTable(timeline.items);
  el("feed").innerHTML = renderNotifications(feed.events);
}

// -- doctor dashboard ---------------------------------------------------------------

async function renderDoctorDashboard(): Promise<void> {
  if (!session) return renderLogin();
  const doctorId = session.principal_id;
  const [overview, roster, feed] = await Promise.all([
    api.overview(doctorId),
    api.roster(doctorId),
    api.notifications(),
  ]);
  root().innerHTML = `
    <header><h1>${t("app.title")}</h1><button id="logout">Sign out</button></header>
    ${renderOverviewPanel(overview)}
    <section id="roster">${renderRoster(roster.patients)}</section>
    <section id="feed">${renderNotifications(feed.events)}</section>`;
  el("logout").addEventListener("click", () => {
    saveSession(null);
    location.hash = "#/";
  });
  startPolling();
}

async function renderDoctorPatientPage(patientId: string): Promise<void> {
  if (!session) return renderLogin();
  const [profile, timeline] = await Promise.all([
    api.patient(patientId),
    api.timeline(patientId),
  ]);
  root().innerHTML = `
    <header><a href="#/doctor">&larr; back</a>${renderHeader(profile)}</header>
    ${renderPatientActions(api, profile)}
    ${renderDetailTabs()}
    <section id="tab-charts" class="tab-panel">${renderCharts(timeline.items)}
      <div id="table">${renderDataTable(timeline.items)}</div></section>
    <section id="tab-reports" class="tab-panel hidden"><p class="empty">Reports uploaded by the caregiver appear here.</p></section>
    <section id="tab-advice" class="tab-panel hidden">
      <form id="advice-form" class="inline"><input id="advice-text" placeholder="Advice">
      <button type="submit">Send advice</button></form></section>
    <section id="tab-tests" class="tab-panel hidden">
      <form id="tests-form" class="inline"><input id="tests-list" placeholder="Tests, comma separated">
      <button type="submit">Order tests</button></form></section>
    <section id="tab-details" class="tab-panel hidden">${renderDetailsTab(profile)}</section>`;

  const submitter = new NotifySubmitter(api, patientId);
  const notifyInput = el("notify-body") as HTMLInputElement;
  notifyInput.addEventListener("input", () => submitter.reset());
  el("notify-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const sent = await submitter.submit(notifyInput.value);
    if (sent) el("notify-feedback").textContent = t("notify.sent");
  });

  el("advice-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const input = el("advice-text") as HTMLInputElement;
    if (input.value.trim()) {
      await api.advise(patientId, input.value);
      input.value = "";
    }
  });
  el("tests-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const input = el("tests-list") as HTMLInputElement;
    const tests = input.value.split(",").map((s) => s.trim()).filter(Boolean);
    if (tests.length) {
      await api.orderTests(patientId, tests, "");
      input.value = "";
    }
  });
  const verify = document.getElementById("verify-button");
  if (verify) {
    verify.addEventListener("click", async () => {
      await api.verifyPatient(patientId);
      await renderDoctorPatientPage(patientId);
    });
  }
  document.querySelectorAll(".tab").forEach((tab) => {
    tab.addEventListener("click", () => {
      document.querySelectorAll(".tab").forEach((other) => other.classList.remove("active"));
      tab.classList.add("active");
      document.querySelectorAll(".tab-panel").forEach((panel) => panel.classList.add("hidden"));
      el(`tab-${(tab as HTMLElement).dataset.tab}`).classList.remove("hidden");
    });
  });
}

// -- polling and routing ----------------------------------------------------------------

function startPolling(): void {
  stopPolling();
  pollTimer = window.setInterval(async () => {
    if (!session) return;
    try {
      const feed = await api.notifications();
      const area = document.getElementById("feed");
      if (area) area.innerHTML = renderFeed(feed.events);
    } catch {
      // transient failures are retried on the next tick
    }
  }, POLL_INTERVAL_MS);
}

function renderFeed(events: NotificationEvent[]): string {
  return renderNotifications(events);
}

function stopPolling(): void {
  if (pollTimer !== undefined) window.clearInterval(pollTimer);
  pollTimer = undefined;
}

async function route(): Promise<void> {
  const hash = location.hash || "#/";
  try {
    if (hash.startsWith("#/doctor/patient/")) {
      await renderDoctorPatientPage(hash.split("/")[3]);
    } else if (hash.startsWith("#/doctor")) {
      await renderDoctorDashboard();
    } else if (hash.startsWith("#/patient")) {
      await renderPatientDashboard();
    } else {
      renderLogin();
    }
  } catch (error) {
    if (error instanceof ApiError && error.status === 401) {
      saveSession(null);
      renderLogin();
    } else {
      throw error;
    }
  }
}

restoreSession();
window.addEventListener("hashchange", () => void route());
void route();
