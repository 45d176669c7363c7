import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { NotifySubmitter, newIdempotencyKey } from "../src/notify.js";

interface SentRequest {
  url: string;
  body: Record<string, unknown>;
}

function fakeServer(delayMs = 0) {
  // minimal stand-in for the backend feed: dedupes on idempotency_key
  const sent: SentRequest[] = [];
  const feed = new Set<string>();
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    if (delayMs) await new Promise((resolve) => setTimeout(resolve, delayMs));
    const body = JSON.parse(String(init?.body ?? "{}"));
    sent.push({ url, body });
    feed.add(String(body.idempotency_key));
    return new Response(JSON.stringify({ status: "queued" }), {
      status: 202,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { sent, feed, fetchImpl };
}

describe("NotifySubmitter", () => {
  it("a double click produces exactly one request and one feed item", async () => {
    const server = fakeServer(5);
    const api = new ApiClient("", server.fetchImpl);
    const submitter = new NotifySubmitter(api, "p1");

    const [first, second] = await Promise.all([
      submitter.submit("please visit"),
      submitter.submit("please visit"), // second click while in flight
    ]);
    expect([first, second].filter(Boolean)).toHaveLength(1);
    expect(server.sent).toHaveLength(1);
    expect(server.feed.size).toBe(1);
  });

  it("a deliberate resend reuses the key so the server dedupes", async () => {
    const server = fakeServer();
    const api = new ApiClient("", server.fetchImpl);
    const submitter = new NotifySubmitter(api, "p1");

    await submitter.submit("please visit");
    await submitter.submit("please visit"); // user clicks again after completion
    expect(server.sent).toHaveLength(2);
    expect(server.sent[0].body.idempotency_key).toBe(server.sent[1].body.idempotency_key);
    expect(server.feed.size).toBe(1);
  });

  it("reset() makes the next send a new intent", async () => {
    const server = fakeServer();
    const api = new ApiClient("", server.fetchImpl);
    const submitter = new NotifySubmitter(api, "p1");

    await submitter.submit("first note");
    submitter.reset();
    await submitter.submit("second note");
    expect(server.feed.size).toBe(2);
  });

  it("ignores empty messages", async () => {
    const server = fakeServer();
    const api = new ApiClient("", server.fetchImpl);
    const submitter = new NotifySubmitter(api, "p1");
    expect(await submitter.submit("   ")).toBe(false);
    expect(server.sent).toHaveLength(0);
  });

  it("keys are 128-bit hex and unique", () => {
    const a = newIdempotencyKey();
    const b = newIdempotencyKey();
    expect(a).toMatch(/^[0-9a-f]{32}$/);
    expect(a).not.toBe(b);
  });
});
