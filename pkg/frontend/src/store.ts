import type { ApiClient, SearchParams } from "./api.js";
import { tokenize } from "./tokenize.js";
import type { CloudTerm, RerankMode, SearchResponse } from "./types.js";

export interface UiState {
  query: string;
  expand: boolean;
  rerank: RerankMode;
  requireAbstract: boolean;
  kExpand: number;
  k: number;
  loading: boolean;
  error: string | null;
  response: SearchResponse | null;
  cloud: CloudTerm[];
}

export type Listener = (state: UiState) => void;

const CLOUD_LIMIT = 20;

/** View state plus the search loop. At most one request is in flight;
 * interactions during a request are queued and the latest state wins. */
export class SearchStore {
  private state: UiState = {
    query: "",
    expand: false,
    rerank: "default",
    requireAbstract: false,
    kExpand: 4,
    k: 10,
    loading: false,
    error: null,
    response: null,
    cloud: [],
  };

  private listeners: Listener[] = [];
  private running: Promise<void> | null = null;
  private queued = false;

  constructor(private readonly client: ApiClient) {}

  getState(): UiState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.state);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  setQuery(query: string): void {
    this.set({ query });
  }

  /** Submit the current query; no-op on a blank query. */
  submit(): Promise<void> {
    if (tokenize(this.state.query).length === 0) {
      return Promise.resolve();
    }
    return this.run();
  }

  setExpand(expand: boolean): Promise<void> {
    this.set({ expand });
    return this.resubmit();
  }

  setRerank(rerank: RerankMode): Promise<void> {
    this.set({ rerank });
    return this.resubmit();
  }

  setRequireAbstract(requireAbstract: boolean): Promise<void> {
    this.set({ requireAbstract });
    return this.resubmit();
  }

  /** Append a suggested descriptor verbatim and re-search. */
  clickTerm(term: string): Promise<void> {
    return this.append(term, false);
  }

  /** Append a journal name in tokenized form and re-search. */
  clickJournal(journal: string): Promise<void> {
    return this.append(journal, true);
  }

  /** Append an author name in tokenized form and re-search. */
  clickAuthor(author: string): Promise<void> {
    return this.append(author, true);
  }

  private resubmit(): Promise<void> {
    if (this.state.response === null && !this.running) {
      return Promise.resolve();
    }
    return this.submit();
  }

  private append(item: string, tokenized: boolean): Promise<void> {
    const itemTokens = tokenize(item);
    if (itemTokens.length === 0) {
      return Promise.resolve();
    }
    const present = new Set(tokenize(this.state.query));
    if (itemTokens.every((token) => present.has(token))) {
      return Promise.resolve(); // already in the query: no change, no request
    }
    const addition = tokenized ? itemTokens.join(" ") : item;
    const query = this.state.query.trim();
    this.set({ query: query ? `${query} ${addition}` : addition });
    return this.submit();
  }

  private params(): SearchParams {
    return {
      q: this.state.query,
      expand: this.state.expand,
      kExpand: this.state.kExpand,
      rerank: this.state.rerank,
      k: this.state.k,
      requireAbstract: this.state.requireAbstract,
    };
  }

  private run(): Promise<void> {
    if (this.running) {
      this.queued = true;
      return this.running;
    }
    this.running = (async () => {
      do {
        this.queued = false;
        const params = this.params();
        this.set({ loading: true });
        try {
          const response = await this.client.search(params);
          this.set({ response, error: null });
          if (!this.queued) {
            await this.loadCloud(params.q, params.kExpand);
          }
        } catch (error) {
          // keep the previous response so the view survives bad input
          this.set({ error: error instanceof Error ? error.message : String(error) });
        }
      } while (this.queued);
      this.set({ loading: false });
      this.running = null;
    })();
    return this.running;
  }

  /** Cloud = best recommendations per query token, merged by max score. */
  private async loadCloud(q: string, kExpand: number): Promise<void> {
    const tokens = [...new Set(tokenize(q))];
    const best = new Map<string, number>();
    try {
      const responses = await Promise.all(
        tokens.map((token) => this.client.recommend(token, Math.max(kExpand, 1))),
      );
      for (const response of responses) {
        for (const rec of response.recommendations) {
          const current = best.get(rec.term);
          if (current === undefined || rec.score > current) {
            best.set(rec.term, rec.score);
          }
        }
      }
    } catch {
      return; // the cloud is decoration; searching already succeeded
    }
    const cloud = [...best.entries()]
      .sort(([ta, sa], [tb, sb]) => sb - sa || (ta < tb ? -1 : 1))
      .slice(0, CLOUD_LIMIT)
      .map(([term, score], index) => ({ term, score, rank: index + 1 }));
    this.set({ cloud });
  }
}
