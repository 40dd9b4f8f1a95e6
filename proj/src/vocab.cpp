#include "repolabel/vocab.hpp"

#include <algorithm>

#include "repolabel/errors.hpp"

namespace repolabel {

LabelVocabulary::LabelVocabulary(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("label vocabulary is empty");
    std::sort(labels_.begin(), labels_.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw ValidationError("label vocabulary contains an empty label");
        if (i > 0 && labels_[i] == labels_[i - 1])
            throw ValidationError("duplicate label in vocabulary: " + labels_[i]);
        index_.emplace(labels_[i], i);
    }
}

std::optional<std::size_t> LabelVocabulary::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t LabelVocabulary::require(const std::string& label) const {
    auto idx = index_of(label);
    if (!idx) throw ValidationError("unknown label: " + label);
    return *idx;
}

}  // namespace repolabel
