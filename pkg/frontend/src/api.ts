// Thin client for the transition service. At most one request is in
// flight: issuing a new one aborts the previous, and responses that
// arrive out of order are discarded (latest wins).

import { parseFramesDoc } from "./frames.js";
import type { AlignRequest, ApiErrorBody, FramesDoc, RebinRequest } from "./types.js";

export class ApiError extends Error {
  readonly body: ApiErrorBody;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.body = body;
  }
}

/** Thrown internally when a response loses the latest-wins race. */
export class StaleResponse extends Error {
  constructor() {
    super("superseded by a newer request");
  }
}

export class ApiClient {
  private sequence = 0;
  private controller: AbortController | null = null;
  private readonly base: string;

  constructor(base = "") {
    this.base = base;
  }

  async rebin(body: RebinRequest): Promise<FramesDoc> {
    return this.post("/api/rebin", body);
  }

  async align(body: AlignRequest): Promise<FramesDoc> {
    return this.post("/api/align", body);
  }

  private async post(path: string, body: unknown): Promise<FramesDoc> {
    const ticket = ++this.sequence;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;

    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (ticket !== this.sequence) throw new StaleResponse();
    if (!response.ok) {
      throw new ApiError((await response.json()) as ApiErrorBody);
    }
    const doc = parseFramesDoc(await response.json());
    if (ticket !== this.sequence) throw new StaleResponse();
    return doc;
  }
}
