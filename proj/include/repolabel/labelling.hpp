#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "repolabel/embeddings.hpp"
#include "repolabel/keywords.hpp"
#include "repolabel/lexing.hpp"
#include "repolabel/vocab.hpp"

namespace repolabel {

enum class NormKind { None, L1, L2, OneHot };

std::string norm_kind_name(NormKind kind);

struct Provenance {
    std::string lf;         // "keyword-name", "sim-<alias>", "random", "csc:(...)", ...
    std::string modality;   // "name" | "identifiers" | "none" | "mixed"
    double threshold = 0.0;
    std::string transform = "raw";
    std::string winner;     // cascade only: the member that supplied the annotation
};

// Dense score vector over the label vocabulary. When `annotated` is false the
// scores are meaningless and ignored.
struct LabelDistribution {
    std::vector<double> scores;
    NormKind norm_kind = NormKind::None;
    bool annotated = false;
    double jsd_vs_uniform = 0.0;
    Provenance provenance;
};

// Jensen–Shannon distance: sqrt of the base-2 JS divergence against the
// mixture M=(p+q)/2. Inputs must be equal-length, non-negative and
// L1-normalized; 0*log(0) counts as 0. Range [0,1].
double jsd(const std::vector<double>& p, const std::vector<double>& q);

// JSD between the L1-renormalization of `scores` and the uniform distribution.
double jsd_vs_uniform(const std::vector<double>& scores);

// Keyword-table lookup structure for the keyword labelling function.
// Multi-term keywords are decomposed into constituent terms carrying the
// keyword's weight; a term hit by several keywords under one label keeps the
// maximum weight.
struct CompiledKeywordTable {
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> term_weights;

    static CompiledKeywordTable compile(const KeywordTable& table, const LabelVocabulary& vocab);
};

// Keyword labelling function: score(l) = sum over document terms of
// freq(term) * weight(term, l), then L1-normalized. A document touching no
// weighted term is unannotated.
LabelDistribution keyword_lf(const Document& doc, const CompiledKeywordTable& table,
                             std::size_t vocab_size);

// Label-name embeddings for the similarity labelling function. Construction
// fails (ConfigError) when a label name has no embeddable term.
struct SimilarityContext {
    std::vector<std::vector<double>> label_vectors;  // one per label index

    static SimilarityContext build(const EmbeddingTable& table, const LabelVocabulary& vocab);
};

// Similarity labelling function: cosine between the document embedding and
// each label-name embedding; shifted by |min| when the minimum is negative
// (that entry lands exactly at 0), then L2-normalized.
LabelDistribution similarity_lf(const Document& name_doc, const EmbeddingTable& table,
                                const SimilarityContext& ctx);

// Random baseline: a one-hot on a uniformly drawn label, seeded from the
// global seed and a stable hash of the node path (schedule-independent).
LabelDistribution random_lf(const std::string& node_path, std::uint64_t global_seed,
                            std::size_t vocab_size);

struct FilterConfig {
    double threshold = 0.0;  // 0 never filters
};

// Computes and stores jsd_vs_uniform on the L1-renormalized scores, then
// clears `annotated` when it falls below the threshold.
LabelDistribution filter_annotation(LabelDistribution dist, const FilterConfig& cfg);

enum class TransformKind { Raw, T1, Tp };

TransformKind transform_kind_from_name(const std::string& name);
std::string transform_name(TransformKind kind);

struct TransformConfig {
    TransformKind kind = TransformKind::Raw;
    double tp_threshold = 0.05;
};

// Raw: identity. T1: one-hot on the argmax (ties -> lowest label index).
// Tp: zero out entries <= tp_threshold, L2-normalize the survivors; a
// distribution with no survivor becomes unannotated.
LabelDistribution transform(LabelDistribution dist, const TransformConfig& cfg);

}  // namespace repolabel
