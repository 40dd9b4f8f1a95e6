#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repolabel/corpus.hpp"
#include "repolabel/keywords.hpp"
#include "repolabel/labelling.hpp"
#include "repolabel/vocab.hpp"

namespace repolabel {

// Small file helpers -------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);

// Structure graph ----------------------------------------------------------

nlohmann::json graph_to_json(const StructureGraph& graph);
StructureGraph graph_from_json(const nlohmann::json& j);

// Documents ----------------------------------------------------------------

// JSONL, one record per (file, modality): {"path","modality","terms":{term:n}}
std::string documents_to_jsonl(
    const std::vector<std::tuple<std::string, std::string, Document>>& docs);
std::vector<std::tuple<std::string, std::string, Document>> documents_from_jsonl(
    const std::string& content);

// Project text: {"project","sentences":[[surface,...],...]}
nlohmann::json project_text_to_json(const std::string& project, const ProjectText& text);
ProjectText project_text_from_json(const nlohmann::json& j);

// Keywords -----------------------------------------------------------------

nlohmann::json keyword_table_to_json(const KeywordTable& table);
KeywordTable keyword_table_from_json(const nlohmann::json& j);

nlohmann::json project_keywords_to_json(const std::string& project,
                                        const std::vector<ScoredKeyword>& keywords);

// Annotation records -------------------------------------------------------

struct AnnotationRecord {
    std::string project;
    std::string path;           // file path, package dotted path, or project name
    std::string kind;           // "file" | "package" | "project"
    std::string lf;
    std::string modality;       // "name" | "identifiers" | "none" | "mixed"
    double threshold = 0.0;
    std::string transform = "raw";
    bool annotated = false;
    double jsd = 0.0;
    std::map<std::string, double> scores;  // sparse: zeros omitted
    std::string display_label;             // package/project kinds only
    std::string winner;                    // cascade cells: the member that won
};

AnnotationRecord make_record(const std::string& project, const std::string& path,
                             const std::string& kind, const LabelDistribution& dist,
                             const LabelVocabulary& vocab);

nlohmann::json record_to_json(const AnnotationRecord& rec);
AnnotationRecord record_from_json(const nlohmann::json& j);

// Rebuilds the dense distribution from a record.
LabelDistribution record_to_distribution(const AnnotationRecord& rec,
                                         const LabelVocabulary& vocab);

std::vector<AnnotationRecord> records_from_jsonl(const std::string& content);

}  // namespace repolabel
