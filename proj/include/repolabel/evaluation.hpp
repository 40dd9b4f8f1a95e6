#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repolabel/aggregation.hpp"
#include "repolabel/corpus.hpp"
#include "repolabel/labelling.hpp"
#include "repolabel/vocab.hpp"

namespace repolabel {

struct RecallResult {
    std::optional<double> recall;                 // nullopt when nothing was scorable
    std::vector<std::string> excluded_projects;   // unannotated, reported not averaged
};

// Mean over annotated projects of |truth ∩ top-k| / |truth|.
RecallResult recall_at_k(const std::map<std::string, LabelDistribution>& project_dists,
                         const GroundTruth& truth, int k, const LabelVocabulary& vocab);

double unannotated_fraction(const std::vector<const LabelDistribution*>& dists);

// Size of the union of per-project top-`pool` label sets (annotated projects).
int polarity(const std::map<std::string, LabelDistribution>& project_dists, int pool = 10);

// Mean over mutually annotated projects of |top-pool(a) ∩ top-pool(b)| / pool.
std::optional<double> agreement(const std::map<std::string, LabelDistribution>& a,
                                const std::map<std::string, LabelDistribution>& b,
                                int pool = 10);

// 1 - mean pairwise JSD over the package's annotated file distributions
// (L1-renormalized); fewer than two annotated files -> 1.
double package_cohesion(const std::vector<const LabelDistribution*>& file_dists);

// Cohen's kappa over two equal-length category sequences; nullopt when chance
// agreement is 1 (kappa undefined).
std::optional<double> cohens_kappa(const std::vector<int>& a, const std::vector<int>& b);

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::size_t count = 0;
};

std::optional<SummaryStats> summarize(std::vector<double> values);

}  // namespace repolabel
