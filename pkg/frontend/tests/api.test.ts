import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, StaleResponse } from "../src/api.js";
import { rebinDoc } from "./mockservice.js";

afterEach(() => vi.unstubAllGlobals());

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), { status });
}

describe("ApiClient", () => {
  it("parses a frames document", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse(rebinDoc(2, 3, 5))));
    const doc = await new ApiClient().rebin({ data: [1], from_bins: 2, to_bins: 3 });
    expect(doc.frames).toHaveLength(5);
  });

  it("raises ApiError with the server's body", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({ code: "BadRequest", message: "nope", detail: null }, 400),
      ),
    );
    await expect(
      new ApiClient().rebin({ data: [1], from_bins: 0, to_bins: 3 }),
    ).rejects.toSatisfy((e: unknown) => e instanceof ApiError && e.body.code === "BadRequest");
  });

  it("discards responses that lose the race (latest wins)", async () => {
    const resolvers: Array<(r: Response) => void> = [];
    vi.stubGlobal(
      "fetch",
      vi.fn(() => new Promise<Response>((resolve) => resolvers.push(resolve))),
    );
    const client = new ApiClient();
    const first = client.rebin({ data: [1], from_bins: 2, to_bins: 3 });
    const second = client.rebin({ data: [1], from_bins: 3, to_bins: 4 });
    // Resolve out of order: the older request must be discarded even
    // though its response arrives.
    resolvers[0]!(jsonResponse(rebinDoc(2, 3, 3)));
    resolvers[1]!(jsonResponse(rebinDoc(3, 4, 3)));
    await expect(first).rejects.toBeInstanceOf(StaleResponse);
    const doc = await second;
    expect(doc.frames[doc.frames.length - 1]!.rects).toHaveLength(4);
  });
});
