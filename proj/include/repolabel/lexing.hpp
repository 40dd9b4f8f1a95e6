#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace repolabel {

// Case-preserving identifier splitter. Splits on underscores, digits and other
// non-alphabetic characters (all dropped) and on case transitions; a run of
// capitals is an acronym that ends before a capital-lowercase pair.
//   "HTTPServer2Impl" -> {"HTTP", "Server", "Impl"}
std::vector<std::string> split_fragments(std::string_view identifier);

// Lower-cased fragments: the term form used everywhere downstream.
//   "HTTPServer2Impl" -> {"http", "server", "impl"},  "Base64" -> {"base"}
std::vector<std::string> split_identifier(std::string_view identifier);

// Stopword list: lower-cased exact-match term filter.
class Stopwords {
public:
    static const Stopwords& default_english();
    // Plain text, one word per line, UTF-8; blank lines ignored.
    static Stopwords load(const std::filesystem::path& path);
    static Stopwords from_words(std::vector<std::string> words);

    bool contains(const std::string& term) const { return words_.count(term) > 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::set<std::string> words_;
};

// Bag of terms for one file and one modality.
struct Document {
    std::map<std::string, int> terms;  // term -> frequency, ordered

    bool empty() const { return terms.empty(); }
    int total() const;
};

// Tokenizes every segment of `relative_path` (directories and base name,
// extension stripped), drops stopwords, and counts the remaining terms.
Document file_name_document(std::string_view relative_path, const Stopwords& stopwords);

// Splits each identifier and counts non-stopword terms.
Document identifiers_document(const std::vector<std::string>& identifiers,
                              const Stopwords& stopwords);

// One parsed Java source: declared names in declaration order, plus the
// package declaration and single-type imports used for dependency edges.
struct ParsedSource {
    std::string package_decl;           // "" when absent
    std::vector<std::string> imports;   // dotted names, wildcard imports dropped
    std::vector<std::string> identifiers;
    bool used_fallback = false;         // lexical-scan fallback was taken
};

// Declaration scanner for Java sources: captures class/interface/enum/record
// names, method and constructor names, parameters, fields and locals; skips
// comments and string contents. Damaged input (unterminated string/comment,
// brace underflow) falls back to a lexical scan of identifier-shaped tokens
// minus reserved words. Throws DataError on undecodable (NUL) bytes.
ParsedSource parse_java_source(std::string_view source);

std::vector<std::string> extract_identifiers(std::string_view source);

}  // namespace repolabel
