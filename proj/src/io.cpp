#include "repolabel/io.hpp"

#include <fstream>
#include <sstream>

#include "repolabel/errors.hpp"

namespace repolabel {

namespace {

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed JSON in " + what + ": " + e.what());
    }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + path.string());
    out << content;
    if (!out) throw DataError("write failed: " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    return parse_json(read_text_file(path), path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& value) {
    write_text_file(path, value.dump(2) + "\n");
}

nlohmann::json graph_to_json(const StructureGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes)
        nodes.push_back({{"id", n.id}, {"kind", n.kind}, {"name", n.name}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges)
        edges.push_back({{"src", e.src}, {"dst", e.dst}, {"kind", e.kind}});
    return {{"project", graph.project}, {"nodes", nodes}, {"edges", edges}};
}

StructureGraph graph_from_json(const nlohmann::json& j) {
    StructureGraph g;
    try {
        g.project = j.at("project").get<std::string>();
        for (const auto& n : j.at("nodes"))
            g.nodes.push_back({n.at("id").get<std::string>(), n.at("kind").get<std::string>(),
                               n.at("name").get<std::string>()});
        for (const auto& e : j.at("edges"))
            g.edges.push_back({e.at("src").get<std::string>(), e.at("dst").get<std::string>(),
                               e.at("kind").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed structure graph: ") + e.what());
    }
    for (const auto& e : g.edges) {
        if (e.kind != "contains") continue;
        if (e.src.rfind("package:", 0) == 0 && e.dst.rfind("file:", 0) == 0)
            g.package_of_file[e.dst.substr(5)] = e.src.substr(8);
    }
    return g;
}

std::string documents_to_jsonl(
    const std::vector<std::tuple<std::string, std::string, Document>>& docs) {
    std::string out;
    for (const auto& [path, modality, doc] : docs) {
        nlohmann::json terms = nlohmann::json::object();
        for (const auto& [term, n] : doc.terms) terms[term] = n;
        nlohmann::json rec = {{"path", path}, {"modality", modality}, {"terms", terms}};
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::vector<std::tuple<std::string, std::string, Document>> documents_from_jsonl(
    const std::string& content) {
    std::vector<std::tuple<std::string, std::string, Document>> out;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = parse_json(line, "documents record");
        Document doc;
        try {
            for (const auto& [term, n] : j.at("terms").items()) doc.terms[term] = n.get<int>();
            out.emplace_back(j.at("path").get<std::string>(),
                             j.at("modality").get<std::string>(), std::move(doc));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("malformed documents record: ") + e.what());
        }
    }
    return out;
}

nlohmann::json project_text_to_json(const std::string& project, const ProjectText& text) {
    std::vector<std::vector<std::string>> sentences(static_cast<std::size_t>(text.sentence_count));
    for (const auto& tok : text.tokens)
        sentences.at(static_cast<std::size_t>(tok.sentence)).push_back(tok.surface);
    return {{"project", project}, {"sentences", sentences}};
}

ProjectText project_text_from_json(const nlohmann::json& j) {
    ProjectText text;
    try {
        int sentence = 0;
        for (const auto& sent : j.at("sentences")) {
            for (const auto& tok : sent) {
                std::string surface = tok.get<std::string>();
                std::string term = surface;
                for (auto& c : term)
                    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
                text.tokens.push_back({std::move(surface), std::move(term), sentence});
            }
            ++sentence;
        }
        text.sentence_count = sentence;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed project text: ") + e.what());
    }
    return text;
}

nlohmann::json keyword_table_to_json(const KeywordTable& table) {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [label, kws] : table.weights) {
        nlohmann::json entry = nlohmann::json::object();
        for (const auto& [kw, w] : kws) entry[kw] = w;
        labels[label] = std::move(entry);
    }
    return {{"labels", labels}};
}

KeywordTable keyword_table_from_json(const nlohmann::json& j) {
    KeywordTable table;
    try {
        for (const auto& [label, kws] : j.at("labels").items()) {
            auto& entry = table.weights[label];
            for (const auto& [kw, w] : kws.items()) entry[kw] = w.get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed keyword table: ") + e.what());
    }
    return table;
}

nlohmann::json project_keywords_to_json(const std::string& project,
                                        const std::vector<ScoredKeyword>& keywords) {
    nlohmann::json kws = nlohmann::json::array();
    for (const auto& kw : keywords) kws.push_back({{"text", kw.text}, {"score", kw.score}});
    return {{"project", project}, {"keywords", kws}};
}

AnnotationRecord make_record(const std::string& project, const std::string& path,
                             const std::string& kind, const LabelDistribution& dist,
                             const LabelVocabulary& vocab) {
    AnnotationRecord rec;
    rec.project = project;
    rec.path = path;
    rec.kind = kind;
    rec.lf = dist.provenance.lf;
    rec.modality = dist.provenance.modality;
    rec.threshold = dist.provenance.threshold;
    rec.transform = dist.provenance.transform;
    rec.annotated = dist.annotated;
    rec.jsd = dist.jsd_vs_uniform;
    rec.winner = dist.provenance.winner;
    if (dist.annotated) {
        if (dist.scores.size() != vocab.size())
            throw ValidationError("distribution size does not match the vocabulary");
        for (std::size_t i = 0; i < dist.scores.size(); ++i)
            if (dist.scores[i] != 0.0) rec.scores[vocab.label(i)] = dist.scores[i];
    }
    return rec;
}

nlohmann::json record_to_json(const AnnotationRecord& rec) {
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [label, s] : rec.scores) scores[label] = s;
    nlohmann::json j = {{"project", rec.project}, {"path", rec.path},   {"kind", rec.kind},
                        {"lf", rec.lf},           {"modality", rec.modality},
                        {"threshold", rec.threshold}, {"transform", rec.transform},
                        {"annotated", rec.annotated}, {"jsd", rec.jsd},
                        {"scores", scores}};
    if (rec.kind != "file") j["display_label"] = rec.display_label;
    if (!rec.winner.empty()) j["winner"] = rec.winner;
    return j;
}

AnnotationRecord record_from_json(const nlohmann::json& j) {
    AnnotationRecord rec;
    try {
        rec.project = j.at("project").get<std::string>();
        rec.path = j.at("path").get<std::string>();
        rec.kind = j.at("kind").get<std::string>();
        rec.lf = j.at("lf").get<std::string>();
        rec.modality = j.at("modality").get<std::string>();
        rec.threshold = j.at("threshold").get<double>();
        rec.transform = j.at("transform").get<std::string>();
        rec.annotated = j.at("annotated").get<bool>();
        rec.jsd = j.at("jsd").get<double>();
        for (const auto& [label, s] : j.at("scores").items()) rec.scores[label] = s.get<double>();
        if (j.contains("display_label")) rec.display_label = j.at("display_label").get<std::string>();
        if (j.contains("winner")) rec.winner = j.at("winner").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed annotation record: ") + e.what());
    }
    return rec;
}

LabelDistribution record_to_distribution(const AnnotationRecord& rec,
                                         const LabelVocabulary& vocab) {
    LabelDistribution dist;
    dist.scores.assign(vocab.size(), 0.0);
    dist.annotated = rec.annotated;
    dist.jsd_vs_uniform = rec.jsd;
    dist.provenance.lf = rec.lf;
    dist.provenance.modality = rec.modality;
    dist.provenance.threshold = rec.threshold;
    dist.provenance.transform = rec.transform;
    dist.provenance.winner = rec.winner;
    for (const auto& [label, s] : rec.scores) dist.scores[vocab.require(label)] = s;
    return dist;
}

std::vector<AnnotationRecord> records_from_jsonl(const std::string& content) {
    std::vector<AnnotationRecord> out;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json(parse_json(line, "annotation record")));
    }
    return out;
}

}  // namespace repolabel
