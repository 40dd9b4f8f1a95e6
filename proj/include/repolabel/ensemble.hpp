#pragma once

#include <vector>

#include "repolabel/labelling.hpp"

namespace repolabel {

// First annotated member wins; its scores are passed through bitwise and the
// provenance notes the winning member. No annotated member -> unannotated.
LabelDistribution cascade(const std::vector<LabelDistribution>& members);

// Rank-weighted voting: each annotated voter awards its rank-r positive label
// a weight of pool+1-r (r = 1..pool, ranks by score descending, ties to the
// lowest label index); vote sums are L2-normalized. No annotated voter ->
// unannotated.
LabelDistribution vote(const std::vector<LabelDistribution>& voters, int pool = 10);

}  // namespace repolabel
