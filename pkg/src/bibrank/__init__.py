"""bibrank: scholarly retrieval with vocabulary-aware query expansion,
journal-concentration and author-centrality re-ranking, and an
assessment evaluation toolkit."""

from .bradford import BradfordZones, JournalTally, bradford_zones, bradfordize, tally_journals
from .centrality import (
    CoauthorGraph,
    betweenness,
    build_coauthor_graph,
    central_authors,
    rerank_by_centrality,
)
from .corpus import BibRecord, Corpus, CorpusFormatError, load_corpus, tokenize, write_corpus
from .engine import SearchRequest, Snapshot, execute_search, load_snapshot
from .evalkit import (
    AgreementResult,
    Judgment,
    JudgmentSet,
    OverlapResult,
    PrecisionResult,
    UndefinedPrecisionError,
    agreement_rate,
    build_pool,
    fleiss_kappa,
    load_judgments,
    macro_average,
    overlap,
    precision,
    standard_error,
)
from .index import (
    InvertedIndex,
    Query,
    RankedEntry,
    RankedList,
    build_index,
    load_index,
    save_index,
    search,
)
from .termrec import (
    Association,
    AssociationModel,
    ExpandedQuery,
    build_association_model,
    expand_query,
    load_model,
    log_likelihood_ratio,
    recommend,
    save_model,
)

__version__ = "0.1.0"
