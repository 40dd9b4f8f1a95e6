#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "repolabel/errors.hpp"
#include "repolabel/io.hpp"
#include "repolabel/labelling.hpp"
#include "repolabel/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace repolabel;

std::pair<std::string, std::string> split_alias(const std::string& text,
                                                const std::string& flag) {
    std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw ConfigError(flag + " expects alias=path, got: " + text);
    return {text.substr(0, eq), text.substr(eq + 1)};
}

void load_config_file(const std::string& path, RunConfig& config) {
    json j = read_json_file(path);
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object: " + path);
    try {
        if (j.contains("corpus")) config.corpus_dir = j.at("corpus").get<std::string>();
        if (j.contains("out")) config.out_dir = j.at("out").get<std::string>();
        if (j.contains("labels")) config.labels_path = j.at("labels").get<std::string>();
        if (j.contains("truth")) config.truth_path = j.at("truth").get<std::string>();
        if (j.contains("stopwords")) config.stopwords_path = j.at("stopwords").get<std::string>();
        if (j.contains("keyword_table"))
            config.keyword_table_path = j.at("keyword_table").get<std::string>();
        if (j.contains("embeddings")) {
            config.embeddings.clear();
            for (const auto& [alias, value] : j.at("embeddings").items()) {
                EmbeddingSpec spec;
                spec.alias = alias;
                if (value.is_string()) {
                    spec.vectors = value.get<std::string>();
                } else {
                    spec.vectors = value.at("vectors").get<std::string>();
                    if (value.contains("subwords"))
                        spec.subwords = value.at("subwords").get<std::string>();
                }
                config.embeddings.push_back(std::move(spec));
            }
        }
        if (j.contains("lfs")) {
            config.lfs.clear();
            for (const auto& s : j.at("lfs"))
                config.lfs.push_back(parse_lf_spec(s.get<std::string>()));
        }
        if (j.contains("ensembles")) {
            config.ensembles.clear();
            for (const auto& s : j.at("ensembles"))
                config.ensembles.push_back(parse_ensemble_spec(s.get<std::string>()));
        }
        if (j.contains("thresholds"))
            config.thresholds = j.at("thresholds").get<std::vector<double>>();
        if (j.contains("transforms"))
            config.transforms = j.at("transforms").get<std::vector<std::string>>();
        if (j.contains("tp_threshold")) config.tp_threshold = j.at("tp_threshold").get<double>();
        if (j.contains("top_k")) config.top_k = j.at("top_k").get<int>();
        if (j.contains("recursive_packages"))
            config.recursive_packages = j.at("recursive_packages").get<bool>();
        if (j.contains("vote_pool")) config.vote_pool = j.at("vote_pool").get<int>();
        if (j.contains("recall_ks")) config.recall_ks = j.at("recall_ks").get<std::vector<int>>();
        if (j.contains("extension")) config.extension = j.at("extension").get<std::string>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("jobs")) config.jobs = j.at("jobs").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError("bad config file " + path + ": " + e.what());
    }
}

struct CliOptions {
    std::string config_file;
    std::string corpus, out, labels, truth, stopwords, keyword_table, extension;
    std::vector<std::string> embeddings, subwords, lfs, ensembles, transforms;
    std::vector<double> thresholds;
    std::vector<int> recall_ks;
    double tp_threshold = 0.05;
    int top_k = 10;
    int vote_pool = 10;
    bool no_recursive_packages = false;
    std::uint64_t seed = 17;
    int jobs = 1;
    // export-treemap only
    std::string project, dest, cell_lf, cell_transform;
    double cell_threshold = 0.0;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_file, "JSON config file; flags override its values");
    cmd->add_option("--corpus", opt.corpus, "corpus directory (one subdirectory per project)");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--labels", opt.labels, "label vocabulary JSON (array of names)");
    cmd->add_option("--truth", opt.truth, "ground truth JSON");
    cmd->add_option("--stopwords", opt.stopwords, "stopword list, one word per line");
    cmd->add_option("--keyword-table", opt.keyword_table, "pre-built keyword table JSON");
    cmd->add_option("--embeddings", opt.embeddings, "alias=path of a word2vec text table")
        ->take_all();
    cmd->add_option("--subwords", opt.subwords, "alias=path of a character n-gram table")
        ->take_all();
    cmd->add_option("--lf", opt.lfs,
                    "labelling function: keyword-name, keyword-identifiers, sim-<alias> or "
                    "random; optional @threshold pin")
        ->take_all();
    cmd->add_option("--ensemble", opt.ensembles, "csc:lf1,lf2,... or vt:lf1,lf2,...")
        ->take_all();
    cmd->add_option("--threshold", opt.thresholds, "filter threshold axis (repeatable)")
        ->take_all();
    cmd->add_option("--transform", opt.transforms, "transform axis: raw, t1, tp (repeatable)")
        ->take_all();
    cmd->add_option("--tp-threshold", opt.tp_threshold, "tp probability cutoff");
    cmd->add_option("--topk", opt.top_k, "labels kept per project for display masking");
    cmd->add_option("--vote-pool", opt.vote_pool, "rank pool for the voting ensemble");
    cmd->add_option("--recall-k", opt.recall_ks, "recall@k values to evaluate")->take_all();
    cmd->add_flag("--no-recursive-packages", opt.no_recursive_packages,
                  "aggregate packages over direct files only");
    cmd->add_option("--extension", opt.extension, "source file extension (default .java)");
    cmd->add_option("--seed", opt.seed, "global seed for the random baseline");
    cmd->add_option("--jobs", opt.jobs, "worker threads");
}

RunConfig build_config(CLI::App* cmd, const CliOptions& opt) {
    RunConfig config;
    if (cmd->count("--config")) load_config_file(opt.config_file, config);
    if (cmd->count("--corpus")) config.corpus_dir = opt.corpus;
    if (cmd->count("--out")) config.out_dir = opt.out;
    if (cmd->count("--labels")) config.labels_path = opt.labels;
    if (cmd->count("--truth")) config.truth_path = opt.truth;
    if (cmd->count("--stopwords")) config.stopwords_path = opt.stopwords;
    if (cmd->count("--keyword-table")) config.keyword_table_path = opt.keyword_table;
    if (cmd->count("--embeddings")) {
        config.embeddings.clear();
        for (const auto& e : opt.embeddings) {
            auto [alias, path] = split_alias(e, "--embeddings");
            config.embeddings.push_back({alias, path, {}});
        }
    }
    for (const auto& s : opt.subwords) {
        auto [alias, path] = split_alias(s, "--subwords");
        bool found = false;
        for (auto& spec : config.embeddings)
            if (spec.alias == alias) {
                spec.subwords = path;
                found = true;
            }
        if (!found)
            throw ConfigError("--subwords names unknown embedding alias: " + alias);
    }
    if (cmd->count("--lf")) {
        config.lfs.clear();
        for (const auto& s : opt.lfs) config.lfs.push_back(parse_lf_spec(s));
    }
    if (cmd->count("--ensemble")) {
        config.ensembles.clear();
        for (const auto& s : opt.ensembles)
            config.ensembles.push_back(parse_ensemble_spec(s));
    }
    if (cmd->count("--threshold")) config.thresholds = opt.thresholds;
    if (cmd->count("--transform")) config.transforms = opt.transforms;
    if (cmd->count("--tp-threshold")) config.tp_threshold = opt.tp_threshold;
    if (cmd->count("--topk")) config.top_k = opt.top_k;
    if (cmd->count("--vote-pool")) config.vote_pool = opt.vote_pool;
    if (cmd->count("--recall-k")) config.recall_ks = opt.recall_ks;
    if (cmd->count("--no-recursive-packages")) config.recursive_packages = false;
    if (cmd->count("--extension")) config.extension = opt.extension;
    if (cmd->count("--seed")) config.seed = opt.seed;
    if (cmd->count("--jobs")) config.jobs = opt.jobs;

    if (config.out_dir.empty()) throw ConfigError("output directory not set (--out)");
    if (config.top_k < 1) throw ConfigError("--topk must be >= 1");
    if (config.vote_pool < 1) throw ConfigError("--vote-pool must be >= 1");
    if (config.jobs < 1) throw ConfigError("--jobs must be >= 1");
    for (int k : config.recall_ks)
        if (k < 1) throw ConfigError("--recall-k values must be >= 1");
    for (const auto& t : config.transforms) transform_kind_from_name(t);  // validate early
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-label annotator for software repositories"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* ingest = app.add_subcommand("ingest", "scan the corpus into graphs and documents");
    CLI::App* keywords =
        app.add_subcommand("keywords", "extract per-project keywords and build the label table");
    CLI::App* annotate =
        app.add_subcommand("annotate", "run labelling functions over all files");
    CLI::App* aggregate =
        app.add_subcommand("aggregate", "lift file annotations to packages and projects");
    CLI::App* evaluate = app.add_subcommand("evaluate", "compute the metric report");
    CLI::App* treemap =
        app.add_subcommand("export-treemap", "rebuild one project's treemap JSON");
    for (CLI::App* cmd : {ingest, keywords, annotate, aggregate, evaluate, treemap})
        add_common_flags(cmd, opt);
    treemap->add_option("--project", opt.project, "project to export")->required();
    treemap->add_option("--dest", opt.dest, "output file (default: rewrite the stage file)");
    treemap->add_option("--cell-lf", opt.cell_lf, "cell selector: labelling function display name")
        ->required();
    treemap->add_option("--cell-threshold", opt.cell_threshold, "cell selector: filter threshold");
    treemap->add_option("--cell-transform", opt.cell_transform,
                        "cell selector: transform (default raw)");

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        RunConfig config = build_config(active, opt);
        if (active == ingest) cmd_ingest(config);
        else if (active == keywords) cmd_keywords(config);
        else if (active == annotate) cmd_annotate(config);
        else if (active == aggregate) cmd_aggregate(config);
        else if (active == evaluate) cmd_evaluate(config);
        else {
            CellConfig cell;
            cell.lf = opt.cell_lf;
            cell.threshold = opt.cell_threshold;
            cell.transform = opt.cell_transform.empty()
                                 ? TransformKind::Raw
                                 : transform_kind_from_name(opt.cell_transform);
            cell.tp_threshold = config.tp_threshold;
            cmd_export_treemap(config, cell, opt.project, opt.dest);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems are config errors
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
