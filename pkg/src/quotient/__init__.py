"""Semantic dimension activation and GF(2) rank analysis for OpenAPI corpora.

Pipeline: ingest OpenAPI 3 documents into per-endpoint signal strings,
activate the 14 semantic dimensions with a pattern set, then measure the
resulting GF(2) activation matrix: ranks, pure-signal witnesses,
dark-endpoint audits, dependency certificates, and ablations.
"""

from .analysis import (
    AblationReport,
    PatternConfig,
    RankReport,
    RefutationVerdict,
    ScopeFilter,
    ablation,
    cumulative_ranks,
    dark_endpoints,
    rank_report,
    refute,
    render_certificate,
    scoped_matrix,
)
from .dimensions import CANONICAL_ORDER, DIMENSIONS, N_DIMENSIONS, Dimension
from .errors import (
    DuplicateEndpointError,
    IngestError,
    PatternError,
    QuotientError,
    ScopeError,
    TsvError,
)
from .gf2 import (
    ActivationMatrix,
    DependencyCertificate,
    RankResult,
    SectionWitness,
    WitnessEntry,
    certificate_holds,
    expose_identity,
    nullspace,
    pure_signals,
    rank,
)
from .ingest import (
    CorpusManifest,
    Endpoint,
    ExtractionConfig,
    extract_signal,
    load_corpus,
    load_run,
    parse_manifest_file,
    traverse_schema,
)
from .patterns import (
    ActivationVector,
    PatternRule,
    PatternSet,
    activate_corpus,
    default_pattern_set,
    load_pattern_set,
    match_endpoint,
    save_pattern_set,
)
from .tsv import read_activation_tsv, render_activation_tsv, write_activation_tsv

__version__ = "0.1.0"

__all__ = [
    "AblationReport",
    "ActivationMatrix",
    "ActivationVector",
    "CANONICAL_ORDER",
    "CorpusManifest",
    "DependencyCertificate",
    "Dimension",
    "DIMENSIONS",
    "DuplicateEndpointError",
    "Endpoint",
    "ExtractionConfig",
    "IngestError",
    "N_DIMENSIONS",
    "PatternConfig",
    "PatternError",
    "PatternRule",
    "PatternSet",
    "QuotientError",
    "RankReport",
    "RankResult",
    "RefutationVerdict",
    "ScopeError",
    "ScopeFilter",
    "SectionWitness",
    "TsvError",
    "WitnessEntry",
    "ablation",
    "activate_corpus",
    "certificate_holds",
    "cumulative_ranks",
    "dark_endpoints",
    "default_pattern_set",
    "expose_identity",
    "extract_signal",
    "load_corpus",
    "load_pattern_set",
    "load_run",
    "match_endpoint",
    "nullspace",
    "parse_manifest_file",
    "pure_signals",
    "rank",
    "rank_report",
    "read_activation_tsv",
    "refute",
    "render_activation_tsv",
    "render_certificate",
    "save_pattern_set",
    "scoped_matrix",
    "traverse_schema",
    "write_activation_tsv",
]
