#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "repolabel/lexing.hpp"
#include "repolabel/vocab.hpp"

namespace repolabel {

struct ProjectRef {
    std::string name;
    std::filesystem::path root;
};

struct SourceFileRef {
    std::string project;
    std::string relative_path;  // '/'-separated, relative to the project root
    std::string package_path;   // dotted; "" is the default package
    std::string name_path;      // relative_path with the source-root prefix stripped
};

// A discovered file together with its parse results (package declaration,
// imports, declared identifiers).
struct LoadedFile {
    SourceFileRef ref;
    ParsedSource parsed;
};

// Recursively collects files with `extension` under the project root, sorted
// lexicographically by relative path. Package paths honour the source's
// `package` declaration and fall back to the directory path relative to the
// innermost `src`/`java` ancestor (or the project root). Unreadable files are
// logged to stderr and skipped; a missing root is a DataError.
std::vector<LoadedFile> load_project_files(const ProjectRef& project,
                                           const std::string& extension = ".java");

std::vector<SourceFileRef> discover_sources(const ProjectRef& project,
                                            const std::string& extension = ".java");

struct GraphNode {
    std::string id;    // "project:<name>" | "package:<dotted>" | "file:<path>"
    std::string kind;  // "project" | "package" | "file"
    std::string name;
};

struct GraphEdge {
    std::string src;
    std::string dst;
    std::string kind;  // "contains" | "depends"
};

// Containment tree (project -> packages -> files) plus import-resolved
// dependency edges between files of the same project.
struct StructureGraph {
    std::string project;
    std::vector<GraphNode> nodes;  // project, then packages sorted, then files sorted
    std::vector<GraphEdge> edges;  // contains edges first, then depends edges

    // file relative_path -> package_path, insertion-ordered by path
    std::map<std::string, std::string> package_of_file;

    std::vector<std::string> package_paths() const;
    // Files under a package; `recursive` includes subpackage files.
    std::vector<std::string> files_in_package(const std::string& package_path,
                                              bool recursive) const;
    std::vector<std::string> all_files() const;
};

StructureGraph build_structure_graph(const ProjectRef& project,
                                     const std::vector<LoadedFile>& files);

struct GroundTruth {
    std::map<std::string, std::vector<std::string>> labels_by_project;

    bool has(const std::string& project) const { return labels_by_project.count(project) > 0; }
    const std::vector<std::string>& labels(const std::string& project) const;
};

// JSON array of {"project": string, "labels": [string, ...]}; every label must
// exist in the vocabulary, projects must be unique, label lists non-empty.
GroundTruth load_ground_truth(const std::filesystem::path& path, const LabelVocabulary& vocab);

// JSON array of label-name strings.
LabelVocabulary load_label_vocabulary(const std::filesystem::path& path);

}  // namespace repolabel
