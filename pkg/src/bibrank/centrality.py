"""Co-authorship network over a result set and betweenness re-ranking.

The network is a simple undirected graph: one node per author occurring in
the result set, one edge per author pair that co-authored at least one
result-set document (repeated collaborations collapse to a single edge).
Betweenness is computed exactly with Brandes' single-source accumulation
over unweighted shortest paths and normalized by 2 / ((n - 1)(n - 2))
over the whole graph's node count.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from itertools import combinations

from .corpus import Corpus
from .index import PROVENANCE_CENTRALITY, RankedEntry, RankedList


@dataclass(frozen=True)
class CoauthorGraph:
    """Simple undirected graph; nodes and adjacency lists are sorted."""

    nodes: tuple[str, ...]
    adjacency: dict[str, tuple[str, ...]]

    @property
    def n(self) -> int:
        return len(self.nodes)

    def edges(self) -> list[tuple[str, str]]:
        return [
            (a, b) for a in self.nodes for b in self.adjacency[a] if a < b
        ]


def build_coauthor_graph(results: RankedList, corpus: Corpus) -> CoauthorGraph:
    """Nodes for every author in the result set, edges for co-authored docs.

    Single-authored documents contribute an isolated node; authorless
    documents contribute nothing.
    """
    neighbors: dict[str, set[str]] = {}
    for entry in results.entries:
        authors = list(dict.fromkeys(corpus.get(entry.doc_id).authors))
        for author in authors:
            neighbors.setdefault(author, set())
        for a, b in combinations(authors, 2):
            neighbors[a].add(b)
            neighbors[b].add(a)
    nodes = tuple(sorted(neighbors))
    adjacency = {node: tuple(sorted(neighbors[node])) for node in nodes}
    return CoauthorGraph(nodes=nodes, adjacency=adjacency)


def betweenness(graph: CoauthorGraph) -> dict[str, float]:
    """Normalized betweenness centrality per author.

    Sources are processed in ascending node order so the floating-point
    accumulation is reproducible bit for bit. Node pairs in different
    components contribute nothing. Graphs with fewer than three nodes
    score 0 everywhere.
    """
    nodes = graph.nodes
    raw = {node: 0.0 for node in nodes}
    for source in nodes:
        # single-source shortest paths (BFS, unit weights)
        sigma = {node: 0 for node in nodes}
        dist = {node: -1 for node in nodes}
        preds: dict[str, list[str]] = {node: [] for node in nodes}
        sigma[source] = 1
        dist[source] = 0
        order: list[str] = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in graph.adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        # dependency accumulation in reverse BFS order
        delta = {node: 0.0 for node in nodes}
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                raw[w] += delta[w]
    n = len(nodes)
    if n < 3:
        return {node: 0.0 for node in nodes}
    # raw sums ordered (s, t) pairs; this scale equals 2/((n-1)(n-2))
    # of the unordered sum, so scores land in [0, 1].
    scale = 1.0 / ((n - 1) * (n - 2))
    return {node: raw[node] * scale for node in nodes}


def rerank_by_centrality(
    results: RankedList, scores: dict[str, float], corpus: Corpus
) -> RankedList:
    """Stable re-sort by the best author betweenness per document.

    A document scores the maximum betweenness over its authors, 0 when it
    has none; equal scores keep the original order.
    """

    def doc_score(entry: RankedEntry) -> float:
        authors = corpus.get(entry.doc_id).authors
        return max((scores.get(author, 0.0) for author in authors), default=0.0)

    reordered = sorted(results.entries, key=lambda e: (-doc_score(e), e.rank))
    entries = tuple(
        RankedEntry(doc_id=e.doc_id, score=doc_score(e), rank=position)
        for position, e in enumerate(reordered, start=1)
    )
    return replace(results, entries=entries, provenance=PROVENANCE_CENTRALITY)


def central_authors(scores: dict[str, float], k: int) -> list[tuple[str, float]]:
    """Top-k authors by betweenness, ties broken by name."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]
