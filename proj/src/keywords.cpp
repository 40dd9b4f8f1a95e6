#include "repolabel/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "repolabel/errors.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

ProjectText build_project_text(const std::vector<std::string>& name_paths) {
    ProjectText text;
    for (const auto& path : name_paths) {
        bool any = false;
        std::size_t start = 0;
        while (start <= path.size()) {
            std::size_t slash = path.find('/', start);
            bool last = slash == std::string::npos;
            std::string segment =
                last ? path.substr(start) : path.substr(start, slash - start);
            if (last) {
                std::size_t dot = segment.rfind('.');
                if (dot != std::string::npos && dot > 0) segment.resize(dot);
            }
            for (auto& surface : split_fragments(segment)) {
                ProjectToken tok;
                tok.term = ascii_lower(surface);
                tok.surface = std::move(surface);
                tok.sentence = text.sentence_count;
                text.tokens.push_back(std::move(tok));
                any = true;
            }
            if (last) break;
            start = slash + 1;
        }
        if (any) ++text.sentence_count;
    }
    return text;
}

namespace {

bool all_upper(const std::string& s) {
    for (char c : s)
        if (c < 'A' || c > 'Z') return false;
    return !s.empty();
}

struct TermStats {
    int tf = 0;
    int tf_upper = 0;    // capitalized, not sentence-initial
    int tf_acronym = 0;  // all-caps, length > 1
    std::vector<int> sentences;             // sentence index per occurrence (nondecreasing)
    std::map<std::string, int> left_co;     // neighbour term -> count, within window
    std::map<std::string, int> right_co;
    bool stop = false;
    double score = 0.0;
};

double median_of(const std::vector<int>& sorted_vals) {
    std::size_t n = sorted_vals.size();
    if (n % 2 == 1) return sorted_vals[n / 2];
    return (sorted_vals[n / 2 - 1] + sorted_vals[n / 2]) / 2.0;
}

}  // namespace

std::vector<ScoredKeyword> extract_project_keywords(const ProjectText& text,
                                                    const Stopwords& stopwords,
                                                    const KeywordParams& params) {
    if (params.max_ngram < 1 || params.window < 1 || params.top_n < 1)
        throw ValidationError("keyword extraction parameters must be positive");
    if (text.tokens.empty()) return {};

    // Group token indices by sentence for windowed statistics.
    std::vector<std::pair<std::size_t, std::size_t>> sentence_spans;  // [begin, end)
    for (std::size_t i = 0; i < text.tokens.size();) {
        std::size_t j = i;
        while (j < text.tokens.size() && text.tokens[j].sentence == text.tokens[i].sentence) ++j;
        sentence_spans.emplace_back(i, j);
        i = j;
    }

    std::map<std::string, TermStats> stats;
    for (const auto& [begin, end] : sentence_spans) {
        for (std::size_t i = begin; i < end; ++i) {
            const ProjectToken& tok = text.tokens[i];
            TermStats& st = stats[tok.term];
            ++st.tf;
            st.stop = stopwords.contains(tok.term);
            st.sentences.push_back(tok.sentence);
            char first = tok.surface.empty() ? '\0' : tok.surface[0];
            if (tok.surface.size() > 1 && all_upper(tok.surface)) ++st.tf_acronym;
            else if (first >= 'A' && first <= 'Z' && i != begin) ++st.tf_upper;
            std::size_t w = static_cast<std::size_t>(params.window);
            for (std::size_t k = (i - begin < w) ? begin : i - w; k < i; ++k)
                ++st.left_co[text.tokens[k].term];
            for (std::size_t k = i + 1; k < std::min(end, i + 1 + w); ++k)
                ++st.right_co[text.tokens[k].term];
        }
    }

    int max_tf = 0;
    double sum_tf = 0.0;
    int n_candidates = 0;
    for (const auto& [term, st] : stats) {
        max_tf = std::max(max_tf, st.tf);
        if (!st.stop) {
            sum_tf += st.tf;
            ++n_candidates;
        }
    }
    if (n_candidates == 0) return {};
    double mean_tf = sum_tf / n_candidates;
    double var = 0.0;
    for (const auto& [term, st] : stats)
        if (!st.stop) var += (st.tf - mean_tf) * (st.tf - mean_tf);
    double std_tf = std::sqrt(var / n_candidates);

    const double n_sentences = text.sentence_count;
    for (auto& [term, st] : stats) {
        double t_case = std::max(st.tf_upper, st.tf_acronym) / (1.0 + std::log(st.tf));
        double t_pos = std::log(std::log(3.0 + median_of(st.sentences)));
        double tf_norm = st.tf / (mean_tf + std_tf);
        int left_total = 0, right_total = 0;
        for (const auto& [w, c] : st.left_co) left_total += c;
        for (const auto& [w, c] : st.right_co) right_total += c;
        double dl = left_total > 0 ? static_cast<double>(st.left_co.size()) / left_total : 0.0;
        double dr = right_total > 0 ? static_cast<double>(st.right_co.size()) / right_total : 0.0;
        double t_rel = 1.0 + (dl + dr) * st.tf / max_tf;
        double t_sent = std::set<int>(st.sentences.begin(), st.sentences.end()).size() /
                        n_sentences;
        st.score = (t_rel * t_pos) / (t_case + tf_norm / t_rel + t_sent / t_rel);
    }

    // Candidate n-grams: contiguous non-stopword runs within a sentence.
    struct Candidate {
        int freq = 0;
        std::vector<std::string> terms;
    };
    std::map<std::string, Candidate> candidates;
    for (const auto& [begin, end] : sentence_spans) {
        std::size_t i = begin;
        while (i < end) {
            if (stats.at(text.tokens[i].term).stop) {
                ++i;
                continue;
            }
            std::size_t run_end = i;
            while (run_end < end && !stats.at(text.tokens[run_end].term).stop) ++run_end;
            for (std::size_t s = i; s < run_end; ++s) {
                std::string key;
                std::vector<std::string> terms;
                for (std::size_t e = s;
                     e < run_end && e - s < static_cast<std::size_t>(params.max_ngram); ++e) {
                    if (!key.empty()) key += ' ';
                    key += text.tokens[e].term;
                    terms.push_back(text.tokens[e].term);
                    Candidate& c = candidates[key];
                    ++c.freq;
                    if (c.terms.empty()) c.terms = terms;
                }
            }
            i = run_end;
        }
    }

    std::vector<ScoredKeyword> scored;
    scored.reserve(candidates.size());
    for (const auto& [key, cand] : candidates) {
        double prod = 1.0, sum = 0.0;
        for (const auto& t : cand.terms) {
            double s = stats.at(t).score;
            prod *= s;
            sum += s;
        }
        scored.push_back({key, prod / (cand.freq * (1.0 + sum))});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredKeyword& a, const ScoredKeyword& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.text < b.text;
    });
    if (scored.size() > static_cast<std::size_t>(params.top_n))
        scored.resize(static_cast<std::size_t>(params.top_n));
    return scored;
}

KeywordTable build_keyword_table(
    const std::map<std::string, std::vector<ScoredKeyword>>& project_keywords,
    const GroundTruth& truth, const LabelVocabulary& vocab) {
    // label -> keyword -> project-set count
    std::map<std::string, std::map<std::string, int>> tf;
    for (const auto& [project, keywords] : project_keywords) {
        const auto& labels = truth.labels(project);  // throws when missing
        std::set<std::string> unique_keywords;
        for (const auto& kw : keywords) unique_keywords.insert(kw.text);
        for (const auto& label : labels) {
            vocab.require(label);
            for (const auto& kw : unique_keywords) ++tf[label][kw];
        }
    }

    std::map<std::string, int> df;  // keyword -> number of labels with TF > 0
    for (const auto& [label, counts] : tf)
        for (const auto& [kw, count] : counts) ++df[kw];

    KeywordTable table;
    const double n_labels = static_cast<double>(vocab.size());
    for (const auto& [label, counts] : tf) {
        for (const auto& [kw, count] : counts) {
            double weight = count * std::log(n_labels / df.at(kw));
            if (weight > 0.0) table.weights[label][kw] = weight;
        }
    }
    return table;
}

}  // namespace repolabel
