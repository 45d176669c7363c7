// UI string table. English is complete; the Hindi column is a stub that
// falls back to English for untranslated keys.

type Locale = "en" | "hi";

const STRINGS: Record<string, Partial<Record<Locale, string>>> = {
  "app.title": { en: "Kidney Care Diary", hi: "किडनी देखभाल डायरी" },
  "badge.healthy": { en: "kidneys OK", hi: "स्थिति सामान्य" },
  "badge.critical": { en: "needs attention", hi: "तत्काल ध्यान दें" },
  "entry.submit": { en: "Record urine protein", hi: "यूरिन प्रोटीन दर्ज करें" },
  "entry.symptoms": { en: "Symptoms or comments", hi: "लक्षण या टिप्पणी" },
  "entry.saved": { en: "Entry saved", hi: "प्रविष्टि सहेजी गई" },
  "alert.banner": { en: "Alert sent to you and your doctor:" },
  "notify.send": { en: "Notify patient" },
  "notify.sent": { en: "Notification sent" },
  "doctor.overview": { en: "Patient overview" },
  "doctor.patients": { en: "All patients" },
  "download.csv": { en: "Download diary (CSV)" },
  "hospitals.title": { en: "Nearby hospitals", hi: "नज़दीकी अस्पताल" },
  "login.signin": { en: "Sign in", hi: "साइन इन" },
  "medicines.title": { en: "Medicines", hi: "दवाइयाँ" },
  "medicines.taken": { en: "Taken today" },
  "notifications.title": { en: "Notifications", hi: "सूचनाएँ" },
  "table.title": { en: "All recorded data" },
};

let active: Locale = "en";

export function setLocale(locale: Locale): void {
  active = locale;
}

export function t(key: string): string {
  const row = STRINGS[key];
  if (!row) return key;
  return row[active] ?? row.en ?? key;
}
