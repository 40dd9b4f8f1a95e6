#include "repolabel/labelling.hpp"

#include <algorithm>
#include <cmath>

#include "repolabel/errors.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

std::string norm_kind_name(NormKind kind) {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::OneHot: return "one-hot";
        default: return "none";
    }
}

double jsd(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        throw ValidationError("jsd: dimension mismatch (" + std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()) + ")");
    if (p.empty()) throw ValidationError("jsd: empty distributions");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw ValidationError("jsd: negative entry");
        double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) acc += p[i] * std::log2(p[i] / m);
        if (q[i] > 0.0) acc += q[i] * std::log2(q[i] / m);
    }
    double divergence = 0.5 * acc;
    if (divergence < 0.0) divergence = 0.0;  // guard rounding
    double dist = std::sqrt(divergence);
    return dist > 1.0 ? 1.0 : dist;
}

double jsd_vs_uniform(const std::vector<double>& scores) {
    double sum = 0.0;
    for (double s : scores) {
        if (s < 0.0) throw ValidationError("jsd_vs_uniform: negative entry");
        sum += s;
    }
    if (sum <= 0.0) throw ValidationError("jsd_vs_uniform: zero-mass distribution");
    std::vector<double> p(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) p[i] = scores[i] / sum;
    std::vector<double> u(scores.size(), 1.0 / static_cast<double>(scores.size()));
    return jsd(p, u);
}

CompiledKeywordTable CompiledKeywordTable::compile(const KeywordTable& table,
                                                   const LabelVocabulary& vocab) {
    CompiledKeywordTable compiled;
    for (const auto& [label, keywords] : table.weights) {
        std::size_t label_idx = vocab.require(label);
        for (const auto& [keyword, weight] : keywords) {
            if (weight <= 0.0) continue;
            std::size_t start = 0;
            while (start <= keyword.size()) {
                std::size_t space = keyword.find(' ', start);
                std::string term = keyword.substr(
                    start, space == std::string::npos ? std::string::npos : space - start);
                if (!term.empty()) {
                    auto& entries = compiled.term_weights[term];
                    auto it = std::find_if(entries.begin(), entries.end(),
                                           [&](const auto& e) { return e.first == label_idx; });
                    if (it == entries.end()) entries.emplace_back(label_idx, weight);
                    else it->second = std::max(it->second, weight);
                }
                if (space == std::string::npos) break;
                start = space + 1;
            }
        }
    }
    for (auto& [term, entries] : compiled.term_weights)
        std::sort(entries.begin(), entries.end());
    return compiled;
}

LabelDistribution keyword_lf(const Document& doc, const CompiledKeywordTable& table,
                             std::size_t vocab_size) {
    LabelDistribution dist;
    dist.scores.assign(vocab_size, 0.0);
    for (const auto& [term, freq] : doc.terms) {
        auto it = table.term_weights.find(term);
        if (it == table.term_weights.end()) continue;
        for (const auto& [label_idx, weight] : it->second)
            dist.scores[label_idx] += freq * weight;
    }
    double sum = 0.0;
    for (double s : dist.scores) sum += s;
    if (sum <= 0.0) return dist;  // unannotated
    for (double& s : dist.scores) s /= sum;
    dist.norm_kind = NormKind::L1;
    dist.annotated = true;
    return dist;
}

SimilarityContext SimilarityContext::build(const EmbeddingTable& table,
                                           const LabelVocabulary& vocab) {
    SimilarityContext ctx;
    ctx.label_vectors.reserve(vocab.size());
    for (const auto& label : vocab.labels()) {
        auto tv = embed_text(split_identifier(label), table);
        if (!tv)
            throw ConfigError("label name has no embeddable term: " + label);
        ctx.label_vectors.push_back(std::move(tv->values));
    }
    return ctx;
}

LabelDistribution similarity_lf(const Document& name_doc, const EmbeddingTable& table,
                                const SimilarityContext& ctx) {
    LabelDistribution dist;
    dist.scores.assign(ctx.label_vectors.size(), 0.0);
    dist.provenance.modality = "name";
    auto doc_vec = embed_document(name_doc, table);
    if (!doc_vec) return dist;  // unembeddable document -> unannotated

    for (std::size_t l = 0; l < ctx.label_vectors.size(); ++l)
        dist.scores[l] = cosine(doc_vec->values, ctx.label_vectors[l]);

    double min = *std::min_element(dist.scores.begin(), dist.scores.end());
    if (min < 0.0)
        for (double& s : dist.scores) s += -min;  // minimum lands exactly at 0

    double sq = 0.0;
    for (double s : dist.scores) sq += s * s;
    if (sq <= 0.0) {
        dist.scores.assign(ctx.label_vectors.size(), 0.0);
        return dist;  // all cosines equal and negative: nothing to normalize
    }
    double norm = std::sqrt(sq);
    for (double& s : dist.scores) s /= norm;
    dist.norm_kind = NormKind::L2;
    dist.annotated = true;
    return dist;
}

LabelDistribution random_lf(const std::string& node_path, std::uint64_t global_seed,
                            std::size_t vocab_size) {
    if (vocab_size == 0) throw ValidationError("random_lf: empty vocabulary");
    LabelDistribution dist;
    dist.scores.assign(vocab_size, 0.0);
    dist.provenance.lf = "random";
    dist.provenance.modality = "none";
    SplitMix64 rng(fnv1a64(node_path) ^ (global_seed * 0x9e3779b97f4a7c15ull));
    dist.scores[rng.next() % vocab_size] = 1.0;
    dist.norm_kind = NormKind::OneHot;
    dist.annotated = true;
    return dist;
}

LabelDistribution filter_annotation(LabelDistribution dist, const FilterConfig& cfg) {
    if (cfg.threshold < 0.0) throw ValidationError("filter threshold must be >= 0");
    dist.provenance.threshold = cfg.threshold;
    if (!dist.annotated) return dist;
    dist.jsd_vs_uniform = jsd_vs_uniform(dist.scores);
    if (dist.jsd_vs_uniform < cfg.threshold) dist.annotated = false;
    return dist;
}

TransformKind transform_kind_from_name(const std::string& name) {
    if (name == "raw") return TransformKind::Raw;
    if (name == "t1") return TransformKind::T1;
    if (name == "tp") return TransformKind::Tp;
    throw ConfigError("unknown transform: " + name + " (expected raw, t1 or tp)");
}

std::string transform_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::T1: return "t1";
        case TransformKind::Tp: return "tp";
        default: return "raw";
    }
}

LabelDistribution transform(LabelDistribution dist, const TransformConfig& cfg) {
    dist.provenance.transform = transform_name(cfg.kind);
    if (!dist.annotated || cfg.kind == TransformKind::Raw) return dist;

    if (cfg.kind == TransformKind::T1) {
        auto best = std::max_element(dist.scores.begin(), dist.scores.end());
        std::size_t idx = static_cast<std::size_t>(best - dist.scores.begin());
        dist.scores.assign(dist.scores.size(), 0.0);
        dist.scores[idx] = 1.0;
        dist.norm_kind = NormKind::OneHot;
        return dist;
    }

    // Tp: strict threshold, survivors L2-normalized.
    double sq = 0.0;
    for (double& s : dist.scores) {
        if (s <= cfg.tp_threshold) s = 0.0;
        else sq += s * s;
    }
    if (sq <= 0.0) {
        dist.annotated = false;
        return dist;
    }
    double norm = std::sqrt(sq);
    for (double& s : dist.scores)
        if (s != 0.0) s /= norm;
    dist.norm_kind = NormKind::L2;
    return dist;
}

}  // namespace repolabel
