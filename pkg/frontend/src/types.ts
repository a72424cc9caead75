export interface SearchEntry {
  rank: number;
  id: string;
  score: number;
  title: string;
  year: number | null;
  journal: string | null;
  authors: string[];
  provenance: string;
}

export interface JournalCount {
  journal: string;
  count: number;
}

export interface AuthorScore {
  author: string;
  score: number;
}

export interface SearchResponse {
  query: string;
  terms: string[];
  expansion_terms: string[];
  provenance: string;
  total_hits: number;
  k: number;
  entries: SearchEntry[];
  journal_tally: JournalCount[];
  non_journal_docs: number;
  central_authors: AuthorScore[];
}

export interface Recommendation {
  term: string;
  score: number;
}

export interface RecommendResponse {
  term: string;
  recommendations: Recommendation[];
}

/** UI selector values; "default" maps to the service's rerank=none. */
export type RerankMode = "default" | "bradford" | "centrality";

export interface CloudTerm {
  term: string;
  score: number;
  rank: number;
}
