#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace repolabel {

// Closed label vocabulary. Labels are sorted lexicographically (byte-wise) on
// construction so that "lowest label index" tie-breaking is reproducible.
class LabelVocabulary {
public:
    LabelVocabulary() = default;
    explicit LabelVocabulary(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t idx) const { return labels_.at(idx); }

    std::optional<std::size_t> index_of(const std::string& label) const;

    // Throws ValidationError naming the label when it is unknown.
    std::size_t require(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace repolabel
