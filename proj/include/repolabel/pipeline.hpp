#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repolabel/aggregation.hpp"
#include "repolabel/labelling.hpp"

namespace repolabel {

// One labelling function reference as given on the command line:
// keyword-name | keyword-identifiers | sim-<alias> | random, with an optional
// per-member "@threshold" suffix (used inside ensembles).
struct LfSpec {
    std::string name;
    std::optional<double> threshold;
};

// "csc:a,b,..." (first annotated member wins) or "vt:a,b,..." (rank voting).
struct EnsembleSpec {
    std::string kind;  // "csc" | "vt"
    std::vector<LfSpec> members;
};

LfSpec parse_lf_spec(const std::string& text);
EnsembleSpec parse_ensemble_spec(const std::string& text);

// Canonical display names: "keyword-name@0.25", "csc:(a,b)", "vt:(a,b)".
std::string lf_display(const LfSpec& spec);
std::string ensemble_display(const EnsembleSpec& spec);

struct EmbeddingSpec {
    std::string alias;
    std::filesystem::path vectors;
    std::filesystem::path subwords;  // optional companion table
};

struct RunConfig {
    std::filesystem::path corpus_dir;
    std::filesystem::path out_dir;
    std::filesystem::path labels_path;
    std::filesystem::path truth_path;
    std::filesystem::path stopwords_path;      // empty -> bundled default list
    std::filesystem::path keyword_table_path;  // empty -> <out>/keywords/keyword_table.json
    std::vector<EmbeddingSpec> embeddings;

    std::vector<LfSpec> lfs;
    std::vector<EnsembleSpec> ensembles;
    std::vector<double> thresholds{0.0};
    std::vector<std::string> transforms{"raw"};
    double tp_threshold = 0.05;
    int top_k = 10;
    bool recursive_packages = true;
    int vote_pool = 10;
    std::vector<int> recall_ks{3, 5, 10};

    std::string extension = ".java";
    std::uint64_t seed = 17;
    int jobs = 1;
};

// One (labelling function, filter threshold, transform) combination. Stage
// outputs are content-addressed by the cell id's hash so differently
// configured results never silently mix.
struct CellConfig {
    std::string lf;  // display name, ensembles included
    double threshold = 0.0;
    TransformKind transform = TransformKind::Raw;
    double tp_threshold = 0.05;

    std::string id() const;         // canonical "lf|t=...|x=...|tp=..." string
    std::string file_stem() const;  // "cell-" + 8 hex digits of fnv1a64(id())
};

// The full threshold x transform cross product over config.lfs + ensembles;
// an explicit "lf@t" pins that labelling function's threshold axis to t.
std::vector<CellConfig> expand_cells(const RunConfig& config);

// Stage entry points. Each reads the previous stage's on-disk artifacts, so
// every stage can be re-run in isolation. All throw ConfigError/DataError.
void cmd_ingest(const RunConfig& config);
void cmd_keywords(const RunConfig& config);
void cmd_annotate(const RunConfig& config);
void cmd_aggregate(const RunConfig& config);
void cmd_evaluate(const RunConfig& config);

// Rebuilds one project's treemap JSON from the aggregate stage's records.
// `dest` empty -> rewrite the stage file in place.
void cmd_export_treemap(const RunConfig& config, const CellConfig& cell,
                        const std::string& project, const std::filesystem::path& dest);

// Deterministic worker pool: applies fn to 0..n-1 with `jobs` threads.
// Callers collect results into index-addressed slots, so output order never
// depends on scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace repolabel
