#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repolabel/lexing.hpp"

namespace repolabel {

struct TextVector {
    std::vector<double> values;
    int covered_terms = 0;  // term occurrences with a vector
    int total_terms = 0;
};

// Pre-trained word vectors in word2vec text format: a "V D" header line, then
// V rows of "word v1 ... vD". An optional companion file in the same format
// supplies character-n-gram vectors (rows keyed by the raw 3..6-gram) for
// out-of-vocabulary fallback.
class EmbeddingTable {
public:
    static EmbeddingTable load_word2vec_text(const std::filesystem::path& path,
                                             const std::filesystem::path& subword_path = {});

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    bool has_subwords() const { return !subwords_.empty(); }

    // Exact-word vector, or the mean of the 3..6-grams of "<word>" when a
    // subword table is present. nullopt when the word is uncovered.
    std::optional<std::vector<double>> vector_for(const std::string& word) const;

private:
    std::map<std::string, std::vector<double>> words_;
    std::map<std::string, std::vector<double>> subwords_;
    std::size_t dim_ = 0;
};

// Mean of the vectors of covered term occurrences; nullopt when nothing is
// covered ("unembeddable").
std::optional<TextVector> embed_text(const std::vector<std::string>& terms,
                                     const EmbeddingTable& table);

// Frequency-weighted variant over a document's term bag.
std::optional<TextVector> embed_document(const Document& doc, const EmbeddingTable& table);

// Throws ValidationError on dimension mismatch or a zero-norm input.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace repolabel
