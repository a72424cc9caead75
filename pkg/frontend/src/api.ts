import type { RecommendResponse, RerankMode, SearchResponse } from "./types.js";

export interface SearchParams {
  q: string;
  expand: boolean;
  kExpand: number;
  rerank: RerankMode;
  k: number;
  requireAbstract: boolean;
}

/** Minimal slice of fetch the client needs; injectable for tests. */
export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export function searchUrl(base: string, params: SearchParams): string {
  const query = new URLSearchParams({
    q: params.q,
    expand: String(params.expand),
    k_expand: String(params.kExpand),
    rerank: params.rerank === "default" ? "none" : params.rerank,
    k: String(params.k),
    require_abstract: String(params.requireAbstract),
  });
  return `${base}/search?${query.toString()}`;
}

export function recommendUrl(base: string, term: string, k: number): string {
  const query = new URLSearchParams({ term, k: String(k) });
  return `${base}/recommend?${query.toString()}`;
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(url: string): Promise<T> {
    const response = await this.fetchImpl(url);
    if (!response.ok) {
      const body = (await response.json().catch(() => null)) as
        | { detail?: unknown }
        | null;
      const detail =
        body && typeof body.detail === "string" ? body.detail : `HTTP ${response.status}`;
      throw new Error(detail);
    }
    return (await response.json()) as T;
  }

  search(params: SearchParams): Promise<SearchResponse> {
    return this.get<SearchResponse>(searchUrl(this.base, params));
  }

  recommend(term: string, k: number): Promise<RecommendResponse> {
    return this.get<RecommendResponse>(recommendUrl(this.base, term, k));
  }
}
