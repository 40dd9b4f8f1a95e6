"""Weak-label annotation of software repositories.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from repolabel._core import (  # noqa: F401
    ConfigError,
    DataError,
    CompiledKeywordTable,
    KeywordTable,
    LabelDistribution,
    LabelVocabulary,
    RunConfig,
    aggregate,
    annotate,
    cascade,
    cohens_kappa,
    evaluate,
    extract_identifiers,
    extract_keywords,
    file_name_terms,
    filter_annotation,
    identifier_terms,
    ingest,
    jsd,
    jsd_vs_uniform,
    keyword_lf,
    keywords,
    package_cohesion,
    random_lf,
    split_fragments,
    split_identifier,
    top_k_labels,
    transform,
    vote,
)

__version__ = "0.1.0"
