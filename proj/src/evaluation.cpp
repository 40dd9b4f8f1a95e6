#include "repolabel/evaluation.hpp"

#include <algorithm>
#include <set>

#include "repolabel/errors.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

RecallResult recall_at_k(const std::map<std::string, LabelDistribution>& project_dists,
                         const GroundTruth& truth, int k, const LabelVocabulary& vocab) {
    if (k < 1) throw ValidationError("recall_at_k: k must be >= 1");
    RecallResult result;
    double sum = 0.0;
    int included = 0;
    for (const auto& [project, dist] : project_dists) {
        if (!truth.has(project) || !dist.annotated) {
            result.excluded_projects.push_back(project);
            continue;
        }
        const auto& truth_labels = truth.labels(project);
        std::set<std::size_t> top;
        for (std::size_t idx : top_k_labels(dist, k)) top.insert(idx);
        int hits = 0;
        for (const auto& label : truth_labels)
            if (top.count(vocab.require(label))) ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(truth_labels.size());
        ++included;
    }
    if (included > 0) result.recall = sum / included;
    return result;
}

double unannotated_fraction(const std::vector<const LabelDistribution*>& dists) {
    if (dists.empty()) return 0.0;
    std::size_t unannotated = 0;
    for (const auto* d : dists) {
        if (!d) throw ValidationError("unannotated_fraction: null input");
        if (!d->annotated) ++unannotated;
    }
    return static_cast<double>(unannotated) / static_cast<double>(dists.size());
}

int polarity(const std::map<std::string, LabelDistribution>& project_dists, int pool) {
    if (pool < 1) throw ValidationError("polarity: pool must be >= 1");
    std::set<std::size_t> labels;
    for (const auto& [project, dist] : project_dists) {
        if (!dist.annotated) continue;
        for (std::size_t idx : top_k_labels(dist, pool)) labels.insert(idx);
    }
    return static_cast<int>(labels.size());
}

std::optional<double> agreement(const std::map<std::string, LabelDistribution>& a,
                                const std::map<std::string, LabelDistribution>& b,
                                int pool) {
    if (pool < 1) throw ValidationError("agreement: pool must be >= 1");
    double sum = 0.0;
    int n = 0;
    for (const auto& [project, dist_a] : a) {
        auto it = b.find(project);
        if (it == b.end() || !dist_a.annotated || !it->second.annotated) continue;
        std::set<std::size_t> top_a;
        for (std::size_t idx : top_k_labels(dist_a, pool)) top_a.insert(idx);
        int shared = 0;
        for (std::size_t idx : top_k_labels(it->second, pool))
            if (top_a.count(idx)) ++shared;
        sum += static_cast<double>(shared) / static_cast<double>(pool);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

double package_cohesion(const std::vector<const LabelDistribution*>& file_dists) {
    std::vector<std::vector<double>> renormed;
    for (const auto* d : file_dists) {
        if (!d) throw ValidationError("package_cohesion: null input");
        if (!d->annotated) continue;
        double mass = 0.0;
        for (double s : d->scores) mass += s;
        if (mass <= 0.0) throw ValidationError("package_cohesion: annotated input with zero mass");
        std::vector<double> p(d->scores);
        for (double& v : p) v /= mass;
        renormed.push_back(std::move(p));
    }
    if (renormed.size() < 2) return 1.0;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < renormed.size(); ++i)
        for (std::size_t j = i + 1; j < renormed.size(); ++j) {
            sum += jsd(renormed[i], renormed[j]);
            ++pairs;
        }
    return 1.0 - sum / static_cast<double>(pairs);
}

std::optional<double> cohens_kappa(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ValidationError("cohens_kappa: rating lists differ in length");
    if (a.empty()) throw ValidationError("cohens_kappa: empty rating lists");
    const double n = static_cast<double>(a.size());
    std::size_t matches = 0;
    std::map<int, int> count_a, count_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) ++matches;
        ++count_a[a[i]];
        ++count_b[b[i]];
    }
    double p_o = static_cast<double>(matches) / n;
    double p_e = 0.0;
    for (const auto& [cat, ca] : count_a) {
        auto it = count_b.find(cat);
        if (it != count_b.end()) p_e += (ca / n) * (it->second / n);
    }
    if (p_e >= 1.0) return std::nullopt;  // chance agreement saturates: undefined
    return (p_o - p_e) / (1.0 - p_e);
}

std::optional<SummaryStats> summarize(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    SummaryStats s;
    s.count = values.size();
    KahanSum sum;
    for (double v : values) sum.add(v);
    s.mean = sum.value() / static_cast<double>(values.size());
    s.median = quantile_sorted(values, 0.5);
    s.q1 = quantile_sorted(values, 0.25);
    s.q3 = quantile_sorted(values, 0.75);
    return s;
}

}  // namespace repolabel
