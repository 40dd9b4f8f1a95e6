#include "repolabel/aggregation.hpp"

#include <algorithm>

#include "repolabel/errors.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

LabelDistribution aggregate_files(const std::vector<const LabelDistribution*>& file_dists) {
    LabelDistribution out;
    std::size_t vocab_size = 0;
    for (const auto* d : file_dists) {
        if (!d) throw ValidationError("aggregate_files: null input");
        if (vocab_size == 0) vocab_size = d->scores.size();
        else if (d->scores.size() != vocab_size)
            throw ValidationError("aggregate_files: inputs disagree on vocabulary size");
    }
    out.scores.assign(vocab_size, 0.0);

    std::vector<KahanSum> sums(vocab_size);
    int annotated = 0;
    for (const auto* d : file_dists) {
        if (!d->annotated) continue;
        double mass = 0.0;
        for (double s : d->scores) {
            if (s < 0.0) throw ValidationError("aggregate_files: negative score");
            mass += s;
        }
        if (mass <= 0.0) throw ValidationError("aggregate_files: annotated input with zero mass");
        for (std::size_t l = 0; l < vocab_size; ++l) sums[l].add(d->scores[l] / mass);
        ++annotated;
    }
    if (annotated == 0) return out;  // unannotated

    for (std::size_t l = 0; l < vocab_size; ++l) out.scores[l] = sums[l].value() / annotated;
    out.norm_kind = NormKind::L1;
    out.annotated = true;
    out.jsd_vs_uniform = jsd_vs_uniform(out.scores);
    return out;
}

std::vector<std::size_t> top_k_labels(const LabelDistribution& dist, int k) {
    if (k < 1) throw ValidationError("top_k_labels: k must be >= 1");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dist.scores.size(); ++i)
        if (dist.scores[i] > 0.0) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (dist.scores[a] != dist.scores[b]) return dist.scores[a] > dist.scores[b];
        return a < b;
    });
    if (idx.size() > static_cast<std::size_t>(k)) idx.resize(static_cast<std::size_t>(k));
    return idx;
}

std::optional<DisplayLabel> assign_display_label(const LabelDistribution& node_dist,
                                                 const std::vector<std::size_t>& project_top_k) {
    if (!node_dist.annotated || project_top_k.empty()) return std::nullopt;
    std::optional<DisplayLabel> best;
    for (std::size_t idx : project_top_k) {
        if (idx >= node_dist.scores.size())
            throw ValidationError("assign_display_label: mask index out of range");
        double p = node_dist.scores[idx];
        if (p <= 0.0) continue;
        if (!best || p > best->probability ||
            (p == best->probability && idx < best->label_index))
            best = DisplayLabel{idx, p};
    }
    return best;
}

}  // namespace repolabel
