import type { FetchLike } from "../src/api.js";
import type { SearchResponse } from "../src/types.js";

export function searchResponse(overrides: Partial<SearchResponse> = {}): SearchResponse {
  return {
    query: "alpha",
    terms: ["alpha"],
    expansion_terms: [],
    provenance: "baseline",
    total_hits: 3,
    k: 10,
    entries: [
      {
        rank: 1,
        id: "d1",
        score: 2.5,
        title: "First title",
        year: 2001,
        journal: "Journal One",
        authors: ["Adams, R."],
        provenance: "baseline",
      },
      {
        rank: 2,
        id: "d2",
        score: 1.5,
        title: "Second title",
        year: null,
        journal: null,
        authors: [],
        provenance: "baseline",
      },
      {
        rank: 3,
        id: "d3",
        score: 0.5,
        title: "Third title",
        year: 1999,
        journal: "Journal Two",
        authors: ["Bell, T.", "Costa, M."],
        provenance: "baseline",
      },
    ],
    journal_tally: [
      { journal: "Journal One", count: 2 },
      { journal: "Journal Two", count: 1 },
    ],
    non_journal_docs: 0,
    central_authors: [
      { author: "Adams, R.", score: 0.5 },
      { author: "Bell, T.", score: 0.0 },
    ],
    ...overrides,
  };
}

export interface AutoBackend {
  fetchImpl: FetchLike;
  calls: string[];
  searchCalls(): string[];
  recommendCalls(): string[];
}

/** Responds immediately; bodies come from the handler. */
export function autoBackend(
  handler: (url: URL) => { status?: number; body: unknown },
): AutoBackend {
  const calls: string[] = [];
  const fetchImpl: FetchLike = (raw) => {
    calls.push(raw);
    const { status = 200, body } = handler(new URL(raw, "http://test"));
    return Promise.resolve({
      ok: status < 400,
      status,
      json: () => Promise.resolve(body),
    });
  };
  return {
    fetchImpl,
    calls,
    searchCalls: () => calls.filter((c) => c.includes("/search?")),
    recommendCalls: () => calls.filter((c) => c.includes("/recommend?")),
  };
}

export interface ManualBackend extends AutoBackend {
  respond(body: unknown, status?: number): Promise<void>;
  pendingCount(): number;
}

/** Holds every request until the test responds explicitly. */
export function manualBackend(): ManualBackend {
  const calls: string[] = [];
  const pending: Array<(response: { ok: boolean; status: number; json(): Promise<unknown> }) => void> = [];
  const fetchImpl: FetchLike = (raw) => {
    calls.push(raw);
    return new Promise((resolve) => {
      pending.push(resolve);
    });
  };
  return {
    fetchImpl,
    calls,
    searchCalls: () => calls.filter((c) => c.includes("/search?")),
    recommendCalls: () => calls.filter((c) => c.includes("/recommend?")),
    pendingCount: () => pending.length,
    respond: async (body, status = 200) => {
      const resolve = pending.shift();
      if (!resolve) {
        throw new Error("no pending request to respond to");
      }
      resolve({ ok: status < 400, status, json: () => Promise.resolve(body) });
      await settle();
    },
  };
}

export function settle(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export function param(url: string, name: string): string | null {
  return new URL(url, "http://test").searchParams.get(name);
}
