#include "repolabel/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "repolabel/errors.hpp"

namespace repolabel {

namespace {

std::map<std::string, std::vector<double>> parse_word2vec_text(const std::filesystem::path& path,
                                                               std::size_t& dim_out) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embedding table: " + path.string());
    std::string header;
    if (!std::getline(in, header)) throw DataError("empty embedding table: " + path.string());
    std::istringstream hs(header);
    long long vocab = -1, dim = -1;
    if (!(hs >> vocab >> dim) || vocab < 0 || dim <= 0 || (hs >> std::ws, !hs.eof()))
        throw DataError("malformed embedding header (expected \"V D\"): " + path.string());

    std::map<std::string, std::vector<double>> table;
    std::string line;
    long long rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        std::vector<double> vec;
        vec.reserve(static_cast<std::size_t>(dim));
        double v;
        while (ls >> v) vec.push_back(v);
        if (!ls.eof())
            throw DataError("non-numeric value in embedding row for \"" + word + "\": " +
                            path.string());
        if (static_cast<long long>(vec.size()) != dim)
            throw DataError("embedding row for \"" + word + "\" has " +
                            std::to_string(vec.size()) + " values, expected " +
                            std::to_string(dim) + ": " + path.string());
        if (!table.emplace(word, std::move(vec)).second)
            throw DataError("duplicate word in embedding table: " + word);
        ++rows;
    }
    if (rows != vocab)
        throw DataError("embedding table declares " + std::to_string(vocab) + " rows but has " +
                        std::to_string(rows) + ": " + path.string());
    dim_out = static_cast<std::size_t>(dim);
    return table;
}

}  // namespace

EmbeddingTable EmbeddingTable::load_word2vec_text(const std::filesystem::path& path,
                                                  const std::filesystem::path& subword_path) {
    EmbeddingTable t;
    t.words_ = parse_word2vec_text(path, t.dim_);
    if (!subword_path.empty()) {
        std::size_t sub_dim = 0;
        t.subwords_ = parse_word2vec_text(subword_path, sub_dim);
        if (sub_dim != t.dim_)
            throw DataError("subword table dimension " + std::to_string(sub_dim) +
                            " does not match word table dimension " + std::to_string(t.dim_));
    }
    return t;
}

std::optional<std::vector<double>> EmbeddingTable::vector_for(const std::string& word) const {
    auto it = words_.find(word);
    if (it != words_.end()) return it->second;
    if (subwords_.empty()) return std::nullopt;

    const std::string marked = "<" + word + ">";
    std::vector<double> sum(dim_, 0.0);
    int hits = 0;
    for (std::size_t len = 3; len <= 6; ++len) {
        if (marked.size() < len) break;
        for (std::size_t i = 0; i + len <= marked.size(); ++i) {
            auto sub = subwords_.find(marked.substr(i, len));
            if (sub == subwords_.end()) continue;
            for (std::size_t d = 0; d < dim_; ++d) sum[d] += sub->second[d];
            ++hits;
        }
    }
    if (hits == 0) return std::nullopt;
    for (auto& v : sum) v /= hits;
    return sum;
}

std::optional<TextVector> embed_text(const std::vector<std::string>& terms,
                                     const EmbeddingTable& table) {
    Document doc;
    for (const auto& t : terms) ++doc.terms[t];
    return embed_document(doc, table);
}

std::optional<TextVector> embed_document(const Document& doc, const EmbeddingTable& table) {
    TextVector tv;
    tv.values.assign(table.dim(), 0.0);
    for (const auto& [term, freq] : doc.terms) {
        tv.total_terms += freq;
        auto vec = table.vector_for(term);
        if (!vec) continue;
        for (std::size_t d = 0; d < table.dim(); ++d) tv.values[d] += (*vec)[d] * freq;
        tv.covered_terms += freq;
    }
    if (tv.covered_terms == 0) return std::nullopt;
    for (auto& v : tv.values) v /= tv.covered_terms;
    return tv;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ValidationError("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ValidationError("cosine: undefined for zero-norm vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace repolabel
