#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repolabel/labelling.hpp"

namespace repolabel {

struct AggregationConfig {
    int top_k = 10;
    bool recursive_packages = true;
};

// Unweighted mean over the annotated inputs, each L1-renormalized first (the
// inputs may carry different norm kinds). No annotated input -> unannotated.
LabelDistribution aggregate_files(const std::vector<const LabelDistribution*>& file_dists);

// Indices of the k highest strictly-positive scores, ties to the lowest label
// index; shorter than k when fewer labels are positive.
std::vector<std::size_t> top_k_labels(const LabelDistribution& dist, int k);

struct DisplayLabel {
    std::size_t label_index = 0;
    double probability = 0.0;
};

// Restricts the node's distribution to the project's top-K labels and takes
// the argmax (ties to the lowest index). nullopt = Unannotated: the node is
// unannotated, the mask is empty, or nothing positive survives the mask.
std::optional<DisplayLabel> assign_display_label(const LabelDistribution& node_dist,
                                                 const std::vector<std::size_t>& project_top_k);

}  // namespace repolabel
