// Double-click-safe submission: one idempotency key per user intent, and
// the submitter refuses to fire while a send is in flight. Re-sending the
// same key is safe server-side either way.

import type { ApiClient } from "./api.js";

export function newIdempotencyKey(): string {
  const bytes = new Uint8Array(16);
  crypto.getRandomValues(bytes);
  return Array.from(bytes, (b) => b.toString(16).padStart(2, "0")).join("");
}

export class NotifySubmitter {
  private pending = false;
  private key: string | null = null;

  constructor(
    private api: ApiClient,
    private patientId: string,
    private keyFactory: () => string = newIdempotencyKey,
  ) {}

  /** Called when the user edits the message: the next send is a new intent. */
  reset(): void {
    this.key = null;
  }

  async submit(body: string): Promise<boolean> {
    if (this.pending) return false;
    if (!body.trim()) return false;
    if (this.key === null) this.key = this.keyFactory();
    this.pending = true;
    try {
      await this.api.notify(this.patientId, body, this.key);
      return true;
    } finally {
      this.pending = false;
    }
  }
}
