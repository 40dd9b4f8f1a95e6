#pragma once

#include <map>
#include <string>
#include <vector>

#include "repolabel/corpus.hpp"
#include "repolabel/lexing.hpp"
#include "repolabel/vocab.hpp"

namespace repolabel {

struct ProjectToken {
    std::string surface;  // case-preserved fragment from the path
    std::string term;     // lower-cased form
    int sentence = 0;     // pseudo-sentence index (one per file path)
};

// Ordered token stream for one project, one pseudo-sentence per file path.
struct ProjectText {
    std::vector<ProjectToken> tokens;
    int sentence_count = 0;
};

// Builds the stream from the projects' file name paths (given order =
// sentence order): every path segment is split into case-preserved fragments,
// the extension is stripped from the base name.
ProjectText build_project_text(const std::vector<std::string>& name_paths);

struct ScoredKeyword {
    std::string text;  // 1..max_ngram lower-cased terms joined by spaces
    double score = 0.0;  // lower is better
};

struct KeywordParams {
    int max_ngram = 3;
    int window = 1;
    int top_n = 100;
};

// Statistical keyword extraction over the token stream. Per-term score
// combines casing, positional earliness, normalized frequency, dispersion
// across pseudo-sentences, and left/right co-occurrence relatedness inside the
// sliding window; n-gram candidates (no stopwords) score as the product of
// term scores divided by (candidate frequency * (1 + sum of term scores)).
// Returns the top_n lowest-scoring candidates, ties broken lexicographically.
std::vector<ScoredKeyword> extract_project_keywords(const ProjectText& text,
                                                    const Stopwords& stopwords,
                                                    const KeywordParams& params = {});

// label -> keyword text -> weight; zero-weight entries are pruned.
struct KeywordTable {
    std::map<std::string, std::map<std::string, double>> weights;
};

// TF(k,l) counts projects labelled l whose keyword list contains k (a project
// set count, not an occurrence count); DF(k) counts labels with TF > 0;
// weight(k,l) = TF * ln(|labels| / DF). Every scored project must appear in
// the ground truth.
KeywordTable build_keyword_table(
    const std::map<std::string, std::vector<ScoredKeyword>>& project_keywords,
    const GroundTruth& truth, const LabelVocabulary& vocab);

}  // namespace repolabel
