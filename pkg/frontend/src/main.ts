import { ApiClient } from "./api.js";
import { renderAuthors, renderJournals, renderResults, renderStatus, renderTermCloud } from "./render.js";
import { SearchStore } from "./store.js";
import type { RerankMode } from "./types.js";

const store = new SearchStore(new ApiClient(""));

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const queryInput = element<HTMLInputElement>("query");
const expandToggle = element<HTMLInputElement>("expand");
const abstractToggle = element<HTMLInputElement>("require-abstract");
const rerankSelect = element<HTMLSelectElement>("rerank");

store.subscribe((state) => {
  element("status").innerHTML = renderStatus(state);
  element("results").innerHTML = renderResults(state);
  element("term-cloud").innerHTML = renderTermCloud(state.cloud);
  element("journals").innerHTML = state.response
    ? renderJournals(state.response.journal_tally)
    : "";
  element("authors").innerHTML = state.response
    ? renderAuthors(state.response.central_authors)
    : "";
  if (queryInput.value !== state.query) {
    queryInput.value = state.query;
  }
});

element<HTMLFormElement>("search-form").addEventListener("submit", (event) => {
  event.preventDefault();
  store.setQuery(queryInput.value);
  void store.submit();
});

expandToggle.addEventListener("change", () => {
  store.setQuery(queryInput.value);
  void store.setExpand(expandToggle.checked);
});

abstractToggle.addEventListener("change", () => {
  store.setQuery(queryInput.value);
  void store.setRequireAbstract(abstractToggle.checked);
});

rerankSelect.addEventListener("change", () => {
  store.setQuery(queryInput.value);
  void store.setRerank(rerankSelect.value as RerankMode);
});

// one delegated handler for every clickable side-panel item
document.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) {
    return;
  }
  const value = target.dataset["value"] ?? "";
  switch (target.dataset["action"]) {
    case "term":
      void store.clickTerm(value);
      break;
    case "journal":
      void store.clickJournal(value);
      break;
    case "author":
      void store.clickAuthor(value);
      break;
  }
});
