import type { UiState } from "./store.js";
import type { AuthorScore, CloudTerm, JournalCount, SearchEntry } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

const PROVENANCE_LABEL: Record<string, string> = {
  baseline: "relevance ranking",
  str_expanded: "relevance ranking, expanded query",
  bradford: "journal concentration",
  centrality: "author centrality",
};

export function renderStatus(state: UiState): string {
  const parts: string[] = [];
  if (state.error) {
    parts.push(`<p class="error">${escapeHtml(state.error)}</p>`);
  }
  if (state.loading) {
    parts.push(`<p class="loading">Searching&hellip;</p>`);
  }
  if (state.response) {
    const label = PROVENANCE_LABEL[state.response.provenance] ?? state.response.provenance;
    parts.push(
      `<p class="hits">Total hits: ${state.response.total_hits}` +
        ` <span class="provenance">(${escapeHtml(label)})</span></p>`,
    );
    if (state.response.expansion_terms.length > 0) {
      const terms = state.response.expansion_terms.map(escapeHtml).join(", ");
      parts.push(`<p class="expansion">Expanded query with: ${terms}</p>`);
    }
  }
  return parts.join("\n");
}

function renderEntry(entry: SearchEntry): string {
  const year = entry.year !== null ? ` (${entry.year})` : "";
  const journal = entry.journal ? ` in <em>${escapeHtml(entry.journal)}</em>` : "";
  const authors =
    entry.authors.length > 0 ? ` by ${escapeHtml(entry.authors.join("; "))}` : "";
  return (
    `<li class="result" data-id="${escapeHtml(entry.id)}">` +
    `<span class="title">${escapeHtml(entry.title)}</span>${year}` +
    `<span class="meta">${journal}${authors}</span>` +
    `</li>`
  );
}

export function renderResults(state: UiState): string {
  if (!state.response) {
    return "";
  }
  if (state.response.entries.length === 0) {
    return `<p class="empty">0 hits</p>`;
  }
  return `<ol class="results">\n${state.response.entries.map(renderEntry).join("\n")}\n</ol>`;
}

/** Cloud entries sized by association rank: the better the rank, the larger. */
export function renderTermCloud(cloud: CloudTerm[]): string {
  if (cloud.length === 0) {
    return "";
  }
  const spans = cloud.map((item) => {
    const size = item.rank <= 3 ? "large" : item.rank <= 8 ? "medium" : "small";
    return (
      `<button class="cloud-term ${size}" data-action="term"` +
      ` data-value="${escapeHtml(item.term)}">${escapeHtml(item.term)}</button>`
    );
  });
  return spans.join("\n");
}

export function renderJournals(tally: JournalCount[]): string {
  if (tally.length === 0) {
    return "";
  }
  const items = tally.map(
    (entry) =>
      `<li><button data-action="journal" data-value="${escapeHtml(entry.journal)}">` +
      `${escapeHtml(entry.journal)} (${entry.count})</button></li>`,
  );
  return `<ul class="journals">\n${items.join("\n")}\n</ul>`;
}

export function renderAuthors(authors: AuthorScore[]): string {
  if (authors.length === 0) {
    return "";
  }
  const items = authors.map(
    (entry) =>
      `<li><button data-action="author" data-value="${escapeHtml(entry.author)}">` +
      `${escapeHtml(entry.author)} (${entry.score.toFixed(7)})</button></li>`,
  );
  return `<ul class="authors">\n${items.join("\n")}\n</ul>`;
}
