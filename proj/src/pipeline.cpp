#include "repolabel/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "repolabel/corpus.hpp"
#include "repolabel/embeddings.hpp"
#include "repolabel/ensemble.hpp"
#include "repolabel/errors.hpp"
#include "repolabel/evaluation.hpp"
#include "repolabel/io.hpp"
#include "repolabel/keywords.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Shortest round-trip decimal form, the same one the JSON writer emits.
std::string num(double x) { return json(x).dump(); }

std::string hex8(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

const Stopwords& stopwords_for(const RunConfig& config) {
    if (config.stopwords_path.empty()) return Stopwords::default_english();
    static std::map<std::string, Stopwords> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace(config.stopwords_path.string());
    if (inserted) it->second = Stopwords::load(config.stopwords_path);
    return it->second;
}

void require_file(const fs::path& path, const std::string& what) {
    if (path.empty()) throw ConfigError(what + " path not set");
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        throw ConfigError(what + " not found: " + path.string());
}

json run_config_json(const RunConfig& c, const std::string& command) {
    json emb = json::object();
    for (const auto& e : c.embeddings) {
        json one = {{"vectors", e.vectors.string()}};
        if (!e.subwords.empty()) one["subwords"] = e.subwords.string();
        emb[e.alias] = std::move(one);
    }
    json lfs = json::array();
    for (const auto& lf : c.lfs) lfs.push_back(lf_display(lf));
    json ensembles = json::array();
    for (const auto& e : c.ensembles) ensembles.push_back(ensemble_display(e));
    return {{"command", command},
            {"corpus", c.corpus_dir.string()},
            {"out", c.out_dir.string()},
            {"labels", c.labels_path.string()},
            {"truth", c.truth_path.string()},
            {"stopwords", c.stopwords_path.empty() ? "(bundled)" : c.stopwords_path.string()},
            {"keyword_table", c.keyword_table_path.string()},
            {"embeddings", emb},
            {"lfs", lfs},
            {"ensembles", ensembles},
            {"thresholds", c.thresholds},
            {"transforms", c.transforms},
            {"tp_threshold", c.tp_threshold},
            {"top_k", c.top_k},
            {"recursive_packages", c.recursive_packages},
            {"vote_pool", c.vote_pool},
            {"recall_ks", c.recall_ks},
            {"extension", c.extension},
            {"seed", c.seed},
            {"jobs", c.jobs}};
}

void write_run_config(const RunConfig& c, const std::string& command) {
    write_json_file(c.out_dir / command / "run_config.json", run_config_json(c, command));
}

// --- ingest-stage artifact access ------------------------------------------

fs::path manifest_path(const RunConfig& c) { return c.out_dir / "ingest" / "manifest.json"; }

std::vector<std::string> read_manifest_projects(const RunConfig& c) {
    if (!fs::exists(manifest_path(c)))
        throw DataError("ingest manifest not found (run `ingest` first): " +
                        manifest_path(c).string());
    json j = read_json_file(manifest_path(c));
    std::vector<std::string> projects;
    try {
        for (const auto& p : j.at("projects")) projects.push_back(p.at("name").get<std::string>());
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed ingest manifest: ") + e.what());
    }
    return projects;
}

struct ProjectDocuments {
    std::map<std::string, Document> name_docs;   // relative path -> name-token bag
    std::map<std::string, Document> ident_docs;  // relative path -> identifier bag
};

ProjectDocuments read_project_documents(const RunConfig& c, const std::string& project) {
    fs::path path = c.out_dir / "ingest" / project / "documents.jsonl";
    ProjectDocuments docs;
    for (auto& [file, modality, doc] : documents_from_jsonl(read_text_file(path))) {
        if (modality == "name") docs.name_docs[file] = std::move(doc);
        else if (modality == "identifiers") docs.ident_docs[file] = std::move(doc);
        else throw DataError("unknown modality in " + path.string() + ": " + modality);
    }
    return docs;
}

StructureGraph read_project_graph(const RunConfig& c, const std::string& project) {
    return graph_from_json(read_json_file(c.out_dir / "ingest" / project / "graph.json"));
}

LabelVocabulary load_vocab(const RunConfig& c) {
    require_file(c.labels_path, "label vocabulary");
    return load_label_vocabulary(c.labels_path);
}

GroundTruth load_truth(const RunConfig& c, const LabelVocabulary& vocab) {
    require_file(c.truth_path, "ground truth");
    return load_ground_truth(c.truth_path, vocab);
}

fs::path keyword_table_file(const RunConfig& c) {
    return c.keyword_table_path.empty() ? c.out_dir / "keywords" / "keyword_table.json"
                                        : c.keyword_table_path;
}

// --- annotate-stage cell plumbing ------------------------------------------

fs::path cells_manifest_path(const RunConfig& c) { return c.out_dir / "annotate" / "cells.json"; }

json cell_to_json(const CellConfig& cell) {
    return {{"id", cell.id()},
            {"file", cell.file_stem() + ".jsonl"},
            {"lf", cell.lf},
            {"threshold", cell.threshold},
            {"transform", transform_name(cell.transform)},
            {"tp_threshold", cell.tp_threshold}};
}

std::vector<CellConfig> read_cells_manifest(const RunConfig& c) {
    if (!fs::exists(cells_manifest_path(c)))
        throw DataError("annotation cells not found (run `annotate` first): " +
                        cells_manifest_path(c).string());
    json j = read_json_file(cells_manifest_path(c));
    std::vector<CellConfig> cells;
    try {
        for (const auto& entry : j.at("cells")) {
            CellConfig cell;
            cell.lf = entry.at("lf").get<std::string>();
            cell.threshold = entry.at("threshold").get<double>();
            cell.transform = transform_kind_from_name(entry.at("transform").get<std::string>());
            cell.tp_threshold = entry.at("tp_threshold").get<double>();
            cells.push_back(std::move(cell));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed cells manifest: ") + e.what());
    }
    return cells;
}

// All resources an annotate run needs, resolved before any work starts.
struct LfResources {
    LabelVocabulary vocab;
    CompiledKeywordTable keyword_table;
    bool keyword_table_loaded = false;
    std::map<std::string, EmbeddingTable> embeddings;     // alias ->
    std::map<std::string, SimilarityContext> sim_contexts;  // alias ->
};

bool is_sim(const std::string& name) { return name.rfind("sim-", 0) == 0; }

void check_lf_name(const std::string& name) {
    if (name == "keyword-name" || name == "keyword-identifiers" || name == "random" ||
        (is_sim(name) && name.size() > 4))
        return;
    throw ConfigError("unknown labelling function: " + name +
                      " (expected keyword-name, keyword-identifiers, sim-<alias> or random)");
}

std::vector<LfSpec> all_member_specs(const RunConfig& c) {
    std::vector<LfSpec> all = c.lfs;
    for (const auto& e : c.ensembles)
        all.insert(all.end(), e.members.begin(), e.members.end());
    return all;
}

LfResources resolve_resources(const RunConfig& c) {
    LfResources res;
    res.vocab = load_vocab(c);
    bool need_keywords = false;
    std::set<std::string> need_sim;
    for (const auto& spec : all_member_specs(c)) {
        check_lf_name(spec.name);
        if (spec.name.rfind("keyword-", 0) == 0) need_keywords = true;
        if (is_sim(spec.name)) need_sim.insert(spec.name.substr(4));
    }
    if (need_keywords) {
        fs::path table_path = keyword_table_file(c);
        if (!fs::exists(table_path))
            throw ConfigError("keyword table not found (run `keywords` first or pass one): " +
                              table_path.string());
        res.keyword_table = CompiledKeywordTable::compile(
            keyword_table_from_json(read_json_file(table_path)), res.vocab);
        res.keyword_table_loaded = true;
    }
    for (const auto& alias : need_sim) {
        auto it = std::find_if(c.embeddings.begin(), c.embeddings.end(),
                               [&](const EmbeddingSpec& e) { return e.alias == alias; });
        if (it == c.embeddings.end())
            throw ConfigError("sim-" + alias + " requires --embeddings " + alias + "=<path>");
        require_file(it->vectors, "embedding table '" + alias + "'");
        if (!it->subwords.empty()) require_file(it->subwords, "subword table '" + alias + "'");
        res.embeddings.emplace(alias,
                               EmbeddingTable::load_word2vec_text(it->vectors, it->subwords));
        res.sim_contexts.emplace(alias,
                                 SimilarityContext::build(res.embeddings.at(alias), res.vocab));
    }
    return res;
}

struct FileUnit {
    std::string project;
    std::string path;       // relative path inside the project
    const Document* name_doc;
    const Document* ident_doc;
};

LabelDistribution base_lf(const LfSpec& spec, const FileUnit& unit, const LfResources& res,
                          const RunConfig& c) {
    static const Document empty_doc;
    if (spec.name == "keyword-name") {
        auto d = keyword_lf(unit.name_doc ? *unit.name_doc : empty_doc, res.keyword_table,
                            res.vocab.size());
        d.provenance.lf = spec.name;
        d.provenance.modality = "name";
        return d;
    }
    if (spec.name == "keyword-identifiers") {
        auto d = keyword_lf(unit.ident_doc ? *unit.ident_doc : empty_doc, res.keyword_table,
                            res.vocab.size());
        d.provenance.lf = spec.name;
        d.provenance.modality = "identifiers";
        return d;
    }
    if (spec.name == "random")
        return random_lf(unit.project + "/" + unit.path, c.seed, res.vocab.size());
    std::string alias = spec.name.substr(4);
    auto d = similarity_lf(unit.name_doc ? *unit.name_doc : empty_doc,
                           res.embeddings.at(alias), res.sim_contexts.at(alias));
    d.provenance.lf = spec.name;
    return d;
}

// Raw LF -> filter on the raw scores -> transform the survivors. Ensemble
// members filter individually (cascade members default to the cell threshold,
// vote members stay raw unless pinned with @t).
LabelDistribution annotate_unit(const CellConfig& cell, const LfSpec* lf,
                                const EnsembleSpec* ensemble, const FileUnit& unit,
                                const LfResources& res, const RunConfig& c) {
    LabelDistribution d;
    if (lf) {
        d = base_lf(*lf, unit, res, c);
        d = filter_annotation(std::move(d), FilterConfig{cell.threshold});
    } else if (ensemble->kind == "csc") {
        std::vector<LabelDistribution> members;
        members.reserve(ensemble->members.size());
        for (const auto& m : ensemble->members)
            members.push_back(filter_annotation(
                base_lf(m, unit, res, c), FilterConfig{m.threshold.value_or(cell.threshold)}));
        d = cascade(members);
    } else {
        std::vector<LabelDistribution> voters;
        voters.reserve(ensemble->members.size());
        for (const auto& m : ensemble->members) {
            auto v = base_lf(m, unit, res, c);
            if (m.threshold) v = filter_annotation(std::move(v), FilterConfig{*m.threshold});
            voters.push_back(std::move(v));
        }
        d = vote(voters, c.vote_pool);
        d = filter_annotation(std::move(d), FilterConfig{cell.threshold});
    }
    return transform(std::move(d), TransformConfig{cell.transform, cell.tp_threshold});
}

// --- aggregate helpers ------------------------------------------------------

std::string display_name(const std::optional<DisplayLabel>& dl, const LabelVocabulary& vocab) {
    return dl ? vocab.label(dl->label_index) : "Unannotated";
}

std::string modality_for_display(const std::string& lf) {
    if (lf.rfind("csc:", 0) == 0 || lf.rfind("vt:", 0) == 0) return "mixed";
    if (lf == "keyword-identifiers") return "identifiers";
    if (lf == "random") return "none";
    return "name";  // keyword-name, sim-*
}

json treemap_json(const StructureGraph& graph, const LabelVocabulary& vocab,
                  const std::map<std::string, LabelDistribution>& file_dists,
                  const std::map<std::string, LabelDistribution>& package_dists,
                  const LabelDistribution& project_dist, int top_k) {
    auto project_mask = top_k_labels(project_dist, top_k);

    auto node_json = [&](const std::string& name, const LabelDistribution& dist) {
        auto dl = assign_display_label(dist, project_mask);
        return json{{"name", name},
                    {"display_label", display_name(dl, vocab)},
                    {"probability", dl ? dl->probability : 0.0},
                    {"children", json::array()}};
    };

    // files grouped by their own package only (subpackage files render below)
    std::map<std::string, std::vector<std::string>> direct_files;
    for (const auto& [path, pkg] : graph.package_of_file) direct_files[pkg].push_back(path);

    std::map<std::string, std::vector<std::string>> subpackages;
    std::vector<std::string> roots;
    for (const auto& pkg : graph.package_paths()) {
        std::size_t dot = pkg.rfind('.');
        if (dot == std::string::npos) roots.push_back(pkg);
        else subpackages[pkg.substr(0, dot)].push_back(pkg);
    }

    std::function<json(const std::string&)> build_package = [&](const std::string& pkg) {
        auto it = package_dists.find(pkg);
        if (it == package_dists.end())
            throw ValidationError("treemap: missing package distribution: " + pkg);
        std::size_t dot = pkg.rfind('.');
        std::string name = pkg.empty() ? "(default)"
                                       : (dot == std::string::npos ? pkg : pkg.substr(dot + 1));
        json node = node_json(name, it->second);
        auto sub = subpackages.find(pkg);
        if (sub != subpackages.end())
            for (const auto& child : sub->second) node["children"].push_back(build_package(child));
        auto files = direct_files.find(pkg);
        if (files != direct_files.end()) {
            for (const auto& path : files->second) {
                auto fit = file_dists.find(path);
                if (fit == file_dists.end())
                    throw ValidationError("treemap: missing file distribution: " + path);
                // display on the probability simplex regardless of the LF's norm
                LabelDistribution renormed = fit->second;
                if (renormed.annotated) {
                    double mass = 0.0;
                    for (double s : renormed.scores) mass += s;
                    if (mass > 0.0)
                        for (double& s : renormed.scores) s /= mass;
                }
                std::size_t slash = path.rfind('/');
                node["children"].push_back(node_json(
                    slash == std::string::npos ? path : path.substr(slash + 1), renormed));
            }
        }
        return node;
    };

    json root = node_json(graph.project, project_dist);
    for (const auto& pkg : roots) root["children"].push_back(build_package(pkg));
    return root;
}

struct ProjectAggregates {
    LabelDistribution project_dist;
    std::map<std::string, LabelDistribution> package_dists;
    std::map<std::string, LabelDistribution> file_dists;
};

ProjectAggregates aggregate_one_project(const StructureGraph& graph,
                                        const std::vector<AnnotationRecord>& file_records,
                                        const LabelVocabulary& vocab, const RunConfig& c) {
    ProjectAggregates agg;
    for (const auto& rec : file_records)
        agg.file_dists.emplace(rec.path, record_to_distribution(rec, vocab));

    std::vector<const LabelDistribution*> all;
    for (const auto& path : graph.all_files()) {
        auto it = agg.file_dists.find(path);
        if (it == agg.file_dists.end())
            throw DataError("annotation records missing for file: " + path);
        all.push_back(&it->second);
    }
    agg.project_dist = aggregate_files(all);

    for (const auto& pkg : graph.package_paths()) {
        std::vector<const LabelDistribution*> in_scope;
        for (const auto& path : graph.files_in_package(pkg, c.recursive_packages))
            in_scope.push_back(&agg.file_dists.at(path));
        agg.package_dists.emplace(pkg, aggregate_files(in_scope));
    }
    return agg;
}

}  // namespace

// --- spec parsing -----------------------------------------------------------

LfSpec parse_lf_spec(const std::string& text) {
    LfSpec spec;
    std::size_t at = text.rfind('@');
    if (at == std::string::npos) {
        spec.name = text;
    } else {
        spec.name = text.substr(0, at);
        try {
            std::size_t used = 0;
            spec.threshold = std::stod(text.substr(at + 1), &used);
            if (used != text.size() - at - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad threshold in labelling function spec: " + text);
        }
        if (*spec.threshold < 0.0)
            throw ConfigError("negative threshold in labelling function spec: " + text);
    }
    if (spec.name.empty()) throw ConfigError("empty labelling function name: " + text);
    return spec;
}

EnsembleSpec parse_ensemble_spec(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("ensemble spec must look like csc:lf1,lf2 or vt:lf1,lf2 — got " + text);
    EnsembleSpec spec;
    spec.kind = text.substr(0, colon);
    if (spec.kind != "csc" && spec.kind != "vt")
        throw ConfigError("unknown ensemble kind: " + spec.kind + " (expected csc or vt)");
    std::string members = text.substr(colon + 1);
    if (!members.empty() && members.front() == '(' && members.back() == ')')
        members = members.substr(1, members.size() - 2);
    std::size_t start = 0;
    while (start <= members.size()) {
        std::size_t comma = members.find(',', start);
        std::string one = members.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!one.empty()) spec.members.push_back(parse_lf_spec(one));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (spec.members.empty()) throw ConfigError("ensemble has no members: " + text);
    return spec;
}

std::string lf_display(const LfSpec& spec) {
    return spec.threshold ? spec.name + "@" + num(*spec.threshold) : spec.name;
}

std::string ensemble_display(const EnsembleSpec& spec) {
    std::string joined;
    for (const auto& m : spec.members) {
        if (!joined.empty()) joined += ',';
        joined += lf_display(m);
    }
    return spec.kind + ":(" + joined + ")";
}

std::string CellConfig::id() const {
    std::string s = lf + "|t=" + num(threshold) + "|x=" + transform_name(transform);
    if (transform == TransformKind::Tp) s += "|tp=" + num(tp_threshold);
    return s;
}

std::string CellConfig::file_stem() const { return "cell-" + hex8(fnv1a64(id())); }

std::vector<CellConfig> expand_cells(const RunConfig& config) {
    if (config.lfs.empty() && config.ensembles.empty())
        throw ConfigError("no labelling functions selected (use --lf and/or --ensemble)");
    if (config.thresholds.empty()) throw ConfigError("threshold list is empty");
    if (config.transforms.empty()) throw ConfigError("transform list is empty");
    for (double t : config.thresholds)
        if (t < 0.0) throw ConfigError("thresholds must be >= 0");

    struct Axis {
        std::string display;
        std::vector<double> thresholds;
    };
    std::vector<Axis> axes;
    for (const auto& lf : config.lfs) {
        check_lf_name(lf.name);
        axes.push_back({lf.name, lf.threshold ? std::vector<double>{*lf.threshold}
                                              : config.thresholds});
    }
    for (const auto& e : config.ensembles) {
        for (const auto& m : e.members) check_lf_name(m.name);
        axes.push_back({ensemble_display(e), config.thresholds});
    }

    std::vector<CellConfig> cells;
    std::set<std::string> seen;
    for (const auto& axis : axes)
        for (double t : axis.thresholds)
            for (const auto& x : config.transforms) {
                CellConfig cell;
                cell.lf = axis.display;
                cell.threshold = t;
                cell.transform = transform_kind_from_name(x);
                cell.tp_threshold = config.tp_threshold;
                if (seen.insert(cell.id()).second) cells.push_back(std::move(cell));
            }
    return cells;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (n == 0) return;
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// --- stages -----------------------------------------------------------------

void cmd_ingest(const RunConfig& config) {
    std::error_code ec;
    if (!fs::is_directory(config.corpus_dir, ec))
        throw DataError("corpus directory not readable: " + config.corpus_dir.string());
    if (config.out_dir.empty()) throw ConfigError("output directory not set (--out)");

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(config.corpus_dir))
        if (entry.is_directory(ec)) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());

    const Stopwords& stopwords = stopwords_for(config);
    json manifest_projects = json::array();
    for (const auto& name : names) {
        ProjectRef project{name, config.corpus_dir / name};
        std::vector<LoadedFile> files;
        try {
            files = load_project_files(project, config.extension);
        } catch (const DataError& e) {
            std::cerr << "warning: skipping project " << name << ": " << e.what() << "\n";
            continue;
        }
        StructureGraph graph = build_structure_graph(project, files);
        write_json_file(config.out_dir / "ingest" / name / "graph.json", graph_to_json(graph));

        std::vector<std::tuple<std::string, std::string, Document>> docs;
        std::vector<std::string> name_paths;
        for (const auto& f : files) {
            docs.emplace_back(f.ref.relative_path, "name",
                              file_name_document(f.ref.name_path, stopwords));
            docs.emplace_back(f.ref.relative_path, "identifiers",
                              identifiers_document(f.parsed.identifiers, stopwords));
            name_paths.push_back(f.ref.name_path);
        }
        write_text_file(config.out_dir / "ingest" / name / "documents.jsonl",
                        documents_to_jsonl(docs));
        write_json_file(config.out_dir / "ingest" / name / "project_text.json",
                        project_text_to_json(name, build_project_text(name_paths)));
        manifest_projects.push_back({{"name", name}, {"files", files.size()}});
    }
    write_json_file(manifest_path(config),
                    {{"extension", config.extension}, {"projects", manifest_projects}});
    write_run_config(config, "ingest");
}

void cmd_keywords(const RunConfig& config) {
    LabelVocabulary vocab = load_vocab(config);
    GroundTruth truth = load_truth(config, vocab);
    const Stopwords& stopwords = stopwords_for(config);

    std::vector<std::string> projects = read_manifest_projects(config);
    std::vector<std::vector<ScoredKeyword>> extracted(projects.size());
    parallel_for(projects.size(), config.jobs, [&](std::size_t i) {
        ProjectText text = project_text_from_json(
            read_json_file(config.out_dir / "ingest" / projects[i] / "project_text.json"));
        extracted[i] = extract_project_keywords(text, stopwords);
    });

    std::map<std::string, std::vector<ScoredKeyword>> by_project;
    for (std::size_t i = 0; i < projects.size(); ++i) {
        write_json_file(config.out_dir / "keywords" / "projects" / (projects[i] + ".json"),
                        project_keywords_to_json(projects[i], extracted[i]));
        by_project.emplace(projects[i], std::move(extracted[i]));
    }

    KeywordTable table = build_keyword_table(by_project, truth, vocab);
    write_json_file(config.out_dir / "keywords" / "keyword_table.json",
                    keyword_table_to_json(table));
    write_run_config(config, "keywords");
}

void cmd_annotate(const RunConfig& config) {
    std::vector<CellConfig> cells = expand_cells(config);
    LfResources res = resolve_resources(config);

    std::vector<std::string> projects = read_manifest_projects(config);
    std::vector<ProjectDocuments> docs(projects.size());
    std::vector<StructureGraph> graphs(projects.size());
    parallel_for(projects.size(), config.jobs, [&](std::size_t i) {
        docs[i] = read_project_documents(config, projects[i]);
        graphs[i] = read_project_graph(config, projects[i]);
    });

    std::vector<FileUnit> units;
    for (std::size_t i = 0; i < projects.size(); ++i) {
        for (const auto& path : graphs[i].all_files()) {
            FileUnit unit;
            unit.project = projects[i];
            unit.path = path;
            auto nit = docs[i].name_docs.find(path);
            unit.name_doc = nit == docs[i].name_docs.end() ? nullptr : &nit->second;
            auto iit = docs[i].ident_docs.find(path);
            unit.ident_doc = iit == docs[i].ident_docs.end() ? nullptr : &iit->second;
            units.push_back(std::move(unit));
        }
    }

    json cell_manifest = json::array();
    for (const auto& cell : cells) {
        const LfSpec* lf = nullptr;
        const EnsembleSpec* ensemble = nullptr;
        for (const auto& s : config.lfs)
            if (s.name == cell.lf) lf = &s;
        for (const auto& e : config.ensembles)
            if (ensemble_display(e) == cell.lf) ensemble = &e;
        if (!lf && !ensemble)
            throw ConfigError("cell references an unselected labelling function: " + cell.lf);

        std::vector<AnnotationRecord> records(units.size());
        parallel_for(units.size(), config.jobs, [&](std::size_t i) {
            LabelDistribution d = annotate_unit(cell, lf, ensemble, units[i], res, config);
            AnnotationRecord rec = make_record(units[i].project, units[i].path, "file", d,
                                               res.vocab);
            rec.lf = cell.lf;
            rec.threshold = cell.threshold;
            records[i] = std::move(rec);
        });

        std::string out;
        for (const auto& rec : records) {
            out += record_to_json(rec).dump();
            out += '\n';
        }
        write_text_file(config.out_dir / "annotate" / (cell.file_stem() + ".jsonl"), out);
        cell_manifest.push_back(cell_to_json(cell));
    }
    write_json_file(cells_manifest_path(config), {{"cells", cell_manifest}});
    write_run_config(config, "annotate");
}

void cmd_aggregate(const RunConfig& config) {
    LabelVocabulary vocab = load_vocab(config);
    std::vector<CellConfig> cells = read_cells_manifest(config);
    std::vector<std::string> projects = read_manifest_projects(config);
    std::vector<StructureGraph> graphs(projects.size());
    parallel_for(projects.size(), config.jobs, [&](std::size_t i) {
        graphs[i] = read_project_graph(config, projects[i]);
    });

    for (const auto& cell : cells) {
        auto all_records = records_from_jsonl(
            read_text_file(config.out_dir / "annotate" / (cell.file_stem() + ".jsonl")));
        std::map<std::string, std::vector<AnnotationRecord>> by_project;
        for (auto& rec : all_records) by_project[rec.project].push_back(std::move(rec));

        std::vector<ProjectAggregates> aggs(projects.size());
        parallel_for(projects.size(), config.jobs, [&](std::size_t i) {
            auto it = by_project.find(projects[i]);
            static const std::vector<AnnotationRecord> none;
            aggs[i] = aggregate_one_project(graphs[i], it == by_project.end() ? none : it->second,
                                            vocab, config);
        });

        fs::path cell_dir = config.out_dir / "aggregate" / cell.file_stem();
        std::string project_lines, package_lines;
        for (std::size_t i = 0; i < projects.size(); ++i) {
            const auto& agg = aggs[i];
            auto mask = top_k_labels(agg.project_dist, config.top_k);

            AnnotationRecord prec =
                make_record(projects[i], projects[i], "project", agg.project_dist, vocab);
            prec.lf = cell.lf;
            prec.modality = modality_for_display(cell.lf);
            prec.threshold = cell.threshold;
            prec.transform = transform_name(cell.transform);
            prec.display_label = display_name(assign_display_label(agg.project_dist, mask), vocab);
            project_lines += record_to_json(prec).dump();
            project_lines += '\n';

            for (const auto& [pkg, dist] : agg.package_dists) {
                AnnotationRecord krec = make_record(projects[i], pkg, "package", dist, vocab);
                krec.lf = cell.lf;
                krec.modality = modality_for_display(cell.lf);
                krec.threshold = cell.threshold;
                krec.transform = transform_name(cell.transform);
                krec.display_label = display_name(assign_display_label(dist, mask), vocab);
                package_lines += record_to_json(krec).dump();
                package_lines += '\n';
            }

            write_json_file(cell_dir / ("treemap_" + projects[i] + ".json"),
                            treemap_json(graphs[i], vocab, agg.file_dists, agg.package_dists,
                                         agg.project_dist, config.top_k));
        }
        write_text_file(cell_dir / "project.jsonl", project_lines);
        write_text_file(cell_dir / "packages.jsonl", package_lines);
    }
    write_run_config(config, "aggregate");
}

void cmd_evaluate(const RunConfig& config) {
    LabelVocabulary vocab = load_vocab(config);
    GroundTruth truth = load_truth(config, vocab);
    std::vector<CellConfig> cells = read_cells_manifest(config);

    struct CellData {
        std::map<std::string, LabelDistribution> project_dists;
        std::vector<LabelDistribution> file_dists;
        std::vector<LabelDistribution> package_dists;
        std::vector<double> file_jsds;                 // annotated only
        std::vector<double> cohesions;                 // one per package
    };
    std::vector<CellData> data(cells.size());

    std::vector<std::string> projects = read_manifest_projects(config);
    std::vector<StructureGraph> graphs(projects.size());
    parallel_for(projects.size(), config.jobs, [&](std::size_t i) {
        graphs[i] = read_project_graph(config, projects[i]);
    });

    parallel_for(cells.size(), config.jobs, [&](std::size_t ci) {
        const auto& cell = cells[ci];
        CellData& d = data[ci];
        fs::path cell_dir = config.out_dir / "aggregate" / cell.file_stem();
        if (!fs::exists(cell_dir / "project.jsonl"))
            throw DataError("aggregate output not found (run `aggregate` first): " +
                            (cell_dir / "project.jsonl").string());

        for (const auto& rec : records_from_jsonl(read_text_file(cell_dir / "project.jsonl")))
            d.project_dists.emplace(rec.project, record_to_distribution(rec, vocab));
        for (const auto& rec : records_from_jsonl(read_text_file(cell_dir / "packages.jsonl")))
            d.package_dists.push_back(record_to_distribution(rec, vocab));

        std::map<std::string, std::map<std::string, LabelDistribution>> file_by_project;
        for (const auto& rec : records_from_jsonl(read_text_file(
                 config.out_dir / "annotate" / (cell.file_stem() + ".jsonl")))) {
            if (rec.annotated) d.file_jsds.push_back(rec.jsd);
            file_by_project[rec.project].emplace(rec.path, record_to_distribution(rec, vocab));
            d.file_dists.push_back(record_to_distribution(rec, vocab));
        }

        for (std::size_t pi = 0; pi < projects.size(); ++pi) {
            auto fit = file_by_project.find(projects[pi]);
            if (fit == file_by_project.end()) continue;
            for (const auto& pkg : graphs[pi].package_paths()) {
                std::vector<const LabelDistribution*> in_pkg;
                for (const auto& path :
                     graphs[pi].files_in_package(pkg, config.recursive_packages)) {
                    auto dit = fit->second.find(path);
                    if (dit != fit->second.end()) in_pkg.push_back(&dit->second);
                }
                d.cohesions.push_back(package_cohesion(in_pkg));
            }
        }
    });

    auto summary_json = [](const std::optional<SummaryStats>& s) -> json {
        if (!s) return nullptr;
        return {{"mean", s->mean}, {"median", s->median}, {"q1", s->q1},
                {"q3", s->q3},     {"count", s->count}};
    };

    json cells_json = json::array();
    std::vector<std::string> csv_rows;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& cell = cells[ci];
        CellData& d = data[ci];

        json recall = json::object();
        std::vector<std::string> excluded;
        for (std::size_t ki = 0; ki < config.recall_ks.size(); ++ki) {
            int k = config.recall_ks[ki];
            RecallResult r = recall_at_k(d.project_dists, truth, k, vocab);
            recall["@" + std::to_string(k)] = r.recall ? json(*r.recall) : json(nullptr);
            if (ki == 0) excluded = r.excluded_projects;  // identical across k
        }

        std::vector<const LabelDistribution*> file_ptrs, package_ptrs, project_ptrs;
        for (const auto& x : d.file_dists) file_ptrs.push_back(&x);
        for (const auto& x : d.package_dists) package_ptrs.push_back(&x);
        for (const auto& [p, x] : d.project_dists) project_ptrs.push_back(&x);

        json unannotated = {{"file", unannotated_fraction(file_ptrs)},
                            {"package", unannotated_fraction(package_ptrs)},
                            {"project", unannotated_fraction(project_ptrs)}};
        auto jsd_summary = summarize(d.file_jsds);
        auto cohesion_summary = summarize(d.cohesions);
        int pol = polarity(d.project_dists);

        cells_json.push_back({{"id", cell.id()},
                              {"lf", cell.lf},
                              {"threshold", cell.threshold},
                              {"transform", transform_name(cell.transform)},
                              {"tp_threshold", cell.tp_threshold},
                              {"recall", recall},
                              {"excluded_projects", excluded},
                              {"unannotated_fraction", unannotated},
                              {"jsd_files", summary_json(jsd_summary)},
                              {"polarity", pol},
                              {"cohesion_packages", summary_json(cohesion_summary)}});

        std::string row = "\"" + cell.id() + "\",\"" + cell.lf + "\"," + num(cell.threshold) +
                          "," + transform_name(cell.transform);
        for (int k : config.recall_ks) {
            RecallResult r = recall_at_k(d.project_dists, truth, k, vocab);
            row += ",";
            if (r.recall) row += num(*r.recall);
        }
        row += "," + num(unannotated_fraction(file_ptrs));
        row += "," + num(unannotated_fraction(package_ptrs));
        row += "," + num(unannotated_fraction(project_ptrs));
        for (double v : {jsd_summary ? jsd_summary->mean : -1.0,
                         jsd_summary ? jsd_summary->median : -1.0}) {
            row += ",";
            if (v >= 0.0) row += num(v);
        }
        row += "," + std::to_string(pol);
        for (double v : {cohesion_summary ? cohesion_summary->mean : -1.0,
                         cohesion_summary ? cohesion_summary->median : -1.0}) {
            row += ",";
            if (v >= 0.0) row += num(v);
        }
        csv_rows.push_back(std::move(row));
    }

    json agreement_pairs = json::array();
    std::string agreement_csv = "lf_config";
    for (const auto& cell : cells) agreement_csv += ",\"" + cell.id() + "\"";
    agreement_csv += "\n";
    for (std::size_t a = 0; a < cells.size(); ++a) {
        agreement_csv += "\"" + cells[a].id() + "\"";
        for (std::size_t b = 0; b < cells.size(); ++b) {
            auto v = agreement(data[a].project_dists, data[b].project_dists);
            agreement_csv += ",";
            if (v) agreement_csv += num(*v);
            if (a < b)
                agreement_pairs.push_back({{"a", cells[a].id()},
                                           {"b", cells[b].id()},
                                           {"value", v ? json(*v) : json(nullptr)}});
        }
        agreement_csv += "\n";
    }

    json metrics = {{"top_k", config.top_k},
                    {"recall_ks", config.recall_ks},
                    {"cells", cells_json},
                    {"agreement", {{"pool", 10}, {"pairs", agreement_pairs}}}};
    write_json_file(config.out_dir / "evaluate" / "metrics.json", metrics);

    std::string csv = "id,lf,threshold,transform";
    for (int k : config.recall_ks) csv += ",recall@" + std::to_string(k);
    csv += ",unannotated_files,unannotated_packages,unannotated_projects";
    csv += ",jsd_mean,jsd_median,polarity,cohesion_mean,cohesion_median\n";
    for (const auto& row : csv_rows) csv += row + "\n";
    write_text_file(config.out_dir / "evaluate" / "metrics.csv", csv);
    write_text_file(config.out_dir / "evaluate" / "agreement.csv", agreement_csv);
    write_run_config(config, "evaluate");
}

void cmd_export_treemap(const RunConfig& config, const CellConfig& cell,
                        const std::string& project, const std::filesystem::path& dest) {
    LabelVocabulary vocab = load_vocab(config);
    StructureGraph graph = read_project_graph(config, project);

    fs::path records_path = config.out_dir / "annotate" / (cell.file_stem() + ".jsonl");
    if (!fs::exists(records_path))
        throw DataError("annotation records not found (run `annotate` first): " +
                        records_path.string());
    std::vector<AnnotationRecord> file_records;
    for (auto& rec : records_from_jsonl(read_text_file(records_path)))
        if (rec.project == project) file_records.push_back(std::move(rec));
    if (file_records.empty())
        throw DataError("no annotation records for project: " + project);

    ProjectAggregates agg = aggregate_one_project(graph, file_records, vocab, config);
    json tree = treemap_json(graph, vocab, agg.file_dists, agg.package_dists, agg.project_dist,
                             config.top_k);
    fs::path out = dest.empty()
                       ? config.out_dir / "aggregate" / cell.file_stem() /
                             ("treemap_" + project + ".json")
                       : dest;
    write_json_file(out, tree);
}

}  // namespace repolabel
