#include "repolabel/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "repolabel/errors.hpp"

namespace repolabel {

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> segs;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t slash = path.find('/', start);
        if (slash == std::string::npos) {
            segs.push_back(path.substr(start));
            break;
        }
        segs.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return segs;
}

// Directory segments after the innermost `src`/`java` ancestor.
std::vector<std::string> package_dir_segments(const std::vector<std::string>& segs) {
    // segs includes the file name as the last element
    std::size_t cut = 0;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i)
        if (segs[i] == "src" || segs[i] == "java") cut = i + 1;
    return {segs.begin() + static_cast<std::ptrdiff_t>(cut), segs.end() - 1};
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

std::vector<LoadedFile> load_project_files(const ProjectRef& project,
                                           const std::string& extension) {
    std::error_code ec;
    if (!std::filesystem::is_directory(project.root, ec))
        throw DataError("project root is not a readable directory: " + project.root.string());

    std::vector<std::string> paths;
    for (auto it = std::filesystem::recursive_directory_iterator(
             project.root, std::filesystem::directory_options::skip_permission_denied);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file(ec)) continue;
        std::string rel = std::filesystem::relative(it->path(), project.root, ec).generic_string();
        if (ec) continue;
        if (rel.size() >= extension.size() &&
            rel.compare(rel.size() - extension.size(), extension.size(), extension) == 0)
            paths.push_back(std::move(rel));
    }
    std::sort(paths.begin(), paths.end());

    std::vector<LoadedFile> out;
    out.reserve(paths.size());
    for (const auto& rel : paths) {
        LoadedFile lf;
        lf.ref.project = project.name;
        lf.ref.relative_path = rel;
        auto segs = split_path(rel);
        auto pkg_dirs = package_dir_segments(segs);
        lf.ref.name_path = join(pkg_dirs, '/');
        if (lf.ref.name_path.empty()) lf.ref.name_path = segs.back();
        else lf.ref.name_path += '/' + segs.back();
        try {
            lf.parsed = parse_java_source(read_file(project.root / rel));
        } catch (const DataError& e) {
            std::cerr << "warning: skipping " << project.name << "/" << rel << ": " << e.what()
                      << "\n";
            continue;
        }
        lf.ref.package_path =
            !lf.parsed.package_decl.empty() ? lf.parsed.package_decl : join(pkg_dirs, '.');
        out.push_back(std::move(lf));
    }
    return out;
}

std::vector<SourceFileRef> discover_sources(const ProjectRef& project,
                                            const std::string& extension) {
    std::vector<SourceFileRef> refs;
    for (auto& lf : load_project_files(project, extension)) refs.push_back(std::move(lf.ref));
    return refs;
}

std::vector<std::string> StructureGraph::package_paths() const {
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (n.kind == "package") out.push_back(n.name);
    return out;
}

std::vector<std::string> StructureGraph::files_in_package(const std::string& package_path,
                                                          bool recursive) const {
    std::vector<std::string> out;
    for (const auto& [path, pkg] : package_of_file) {
        if (pkg == package_path)
            out.push_back(path);
        else if (recursive && pkg.size() > package_path.size() && !package_path.empty() &&
                 pkg.compare(0, package_path.size(), package_path) == 0 &&
                 pkg[package_path.size()] == '.')
            out.push_back(path);
    }
    return out;
}

std::vector<std::string> StructureGraph::all_files() const {
    std::vector<std::string> out;
    for (const auto& [path, pkg] : package_of_file) out.push_back(path);
    return out;
}

StructureGraph build_structure_graph(const ProjectRef& project,
                                     const std::vector<LoadedFile>& files) {
    StructureGraph g;
    g.project = project.name;
    const std::string project_id = "project:" + project.name;
    g.nodes.push_back({project_id, "project", project.name});

    // Prefix-closed package set.
    std::set<std::string> packages;
    for (const auto& f : files) {
        const std::string& pkg = f.ref.package_path;
        packages.insert(pkg);
        for (std::size_t i = 0; i < pkg.size(); ++i)
            if (pkg[i] == '.') packages.insert(pkg.substr(0, i));
    }
    for (const auto& pkg : packages) g.nodes.push_back({"package:" + pkg, "package", pkg});

    std::vector<std::string> sorted_paths;
    for (const auto& f : files) sorted_paths.push_back(f.ref.relative_path);
    std::sort(sorted_paths.begin(), sorted_paths.end());
    for (const auto& p : sorted_paths) g.nodes.push_back({"file:" + p, "file", p});

    // Containment edges: parent of a package is its dotted prefix (or the
    // project); parent of a file is its package.
    for (const auto& pkg : packages) {
        std::size_t dot = pkg.rfind('.');
        std::string parent =
            dot == std::string::npos ? project_id : "package:" + pkg.substr(0, dot);
        g.edges.push_back({parent, "package:" + pkg, "contains"});
    }
    for (const auto& f : files) {
        g.edges.push_back({"package:" + f.ref.package_path, "file:" + f.ref.relative_path,
                           "contains"});
        g.package_of_file[f.ref.relative_path] = f.ref.package_path;
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });

    // Dependency edges from single-type imports resolving inside the project.
    std::map<std::pair<std::string, std::string>, std::string> by_pkg_class;
    for (const auto& f : files) {
        auto segs = split_path(f.ref.relative_path);
        std::string cls = segs.back();
        std::size_t dot = cls.rfind('.');
        if (dot != std::string::npos && dot > 0) cls = cls.substr(0, dot);
        by_pkg_class[{f.ref.package_path, cls}] = f.ref.relative_path;
    }
    std::set<std::pair<std::string, std::string>> dep_edges;
    for (const auto& f : files) {
        for (const auto& imp : f.parsed.imports) {
            std::size_t last = imp.rfind('.');
            if (last == std::string::npos) continue;
            auto it = by_pkg_class.find({imp.substr(0, last), imp.substr(last + 1)});
            if (it == by_pkg_class.end()) {
                // Static member import: drop the member segment and retry.
                std::size_t prev = imp.rfind('.', last - 1);
                if (prev == std::string::npos) continue;
                it = by_pkg_class.find({imp.substr(0, prev), imp.substr(prev + 1, last - prev - 1)});
                if (it == by_pkg_class.end()) continue;
            }
            if (it->second != f.ref.relative_path)
                dep_edges.insert({f.ref.relative_path, it->second});
        }
    }
    for (const auto& [src, dst] : dep_edges)
        g.edges.push_back({"file:" + src, "file:" + dst, "depends"});
    return g;
}

const std::vector<std::string>& GroundTruth::labels(const std::string& project) const {
    auto it = labels_by_project.find(project);
    if (it == labels_by_project.end())
        throw ValidationError("project missing from ground truth: " + project);
    return it->second;
}

GroundTruth load_ground_truth(const std::filesystem::path& path, const LabelVocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ground truth file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed ground truth JSON in " + path.string() + ": " + e.what());
    }
    if (!j.is_array()) throw DataError("ground truth must be a JSON array: " + path.string());

    GroundTruth gt;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("project") || !entry.contains("labels"))
            throw DataError("ground truth entries need \"project\" and \"labels\" fields");
        std::string project = entry.at("project").get<std::string>();
        if (gt.labels_by_project.count(project))
            throw DataError("duplicate ground truth entry for project: " + project);
        std::vector<std::string> labels;
        for (const auto& l : entry.at("labels")) {
            std::string label = l.get<std::string>();
            vocab.require(label);
            labels.push_back(std::move(label));
        }
        if (labels.empty()) throw DataError("empty label list for project: " + project);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        gt.labels_by_project.emplace(std::move(project), std::move(labels));
    }
    return gt;
}

LabelVocabulary load_label_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open label vocabulary file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed label vocabulary JSON in " + path.string() + ": " + e.what());
    }
    if (!j.is_array()) throw DataError("label vocabulary must be a JSON array: " + path.string());
    std::vector<std::string> labels;
    for (const auto& l : j) labels.push_back(l.get<std::string>());
    try {
        return LabelVocabulary(std::move(labels));
    } catch (const ValidationError& e) {
        throw DataError("invalid label vocabulary in " + path.string() + ": " + e.what());
    }
}

}  // namespace repolabel
