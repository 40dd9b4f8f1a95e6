#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "repolabel/aggregation.hpp"
#include "repolabel/corpus.hpp"
#include "repolabel/embeddings.hpp"
#include "repolabel/ensemble.hpp"
#include "repolabel/errors.hpp"
#include "repolabel/evaluation.hpp"
#include "repolabel/keywords.hpp"
#include "repolabel/labelling.hpp"
#include "repolabel/lexing.hpp"
#include "repolabel/pipeline.hpp"
#include "repolabel/vocab.hpp"

namespace py = pybind11;
using namespace repolabel;

namespace {

Document dict_to_document(const std::map<std::string, int>& terms) {
    Document doc;
    doc.terms = terms;
    return doc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "weak-label annotation of software repositories";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");

    // lexing
    m.def("split_fragments",
          [](const std::string& s) { return split_fragments(s); },
          py::arg("identifier"));
    m.def("split_identifier",
          [](const std::string& s) { return split_identifier(s); },
          py::arg("identifier"));
    m.def(
        "file_name_terms",
        [](const std::string& path) {
            return file_name_document(path, Stopwords::default_english()).terms;
        },
        py::arg("relative_path"), "Tokenized path terms with default stopwords removed");
    m.def(
        "identifier_terms",
        [](const std::vector<std::string>& identifiers) {
            return identifiers_document(identifiers, Stopwords::default_english()).terms;
        },
        py::arg("identifiers"));
    m.def(
        "extract_identifiers",
        [](const std::string& source) { return extract_identifiers(source); },
        py::arg("source"), "Declared names from a Java source string");

    // vocabulary
    py::class_<LabelVocabulary>(m, "LabelVocabulary")
        .def(py::init<std::vector<std::string>>(), py::arg("labels"))
        .def("__len__", &LabelVocabulary::size)
        .def_property_readonly("labels", &LabelVocabulary::labels)
        .def("index_of",
             [](const LabelVocabulary& v, const std::string& label) { return v.index_of(label); });

    // distributions
    py::class_<LabelDistribution>(m, "LabelDistribution")
        .def_readonly("scores", &LabelDistribution::scores)
        .def_readonly("annotated", &LabelDistribution::annotated)
        .def_readonly("jsd_vs_uniform", &LabelDistribution::jsd_vs_uniform)
        .def_property_readonly("lf", [](const LabelDistribution& d) { return d.provenance.lf; })
        .def_property_readonly("transform",
                               [](const LabelDistribution& d) { return d.provenance.transform; });

    m.def("jsd", &jsd, py::arg("p"), py::arg("q"));
    m.def("jsd_vs_uniform", &jsd_vs_uniform, py::arg("scores"));

    // keyword machinery
    py::class_<KeywordTable>(m, "KeywordTable")
        .def(py::init([](const std::map<std::string, std::map<std::string, double>>& weights) {
                 KeywordTable t;
                 t.weights = weights;
                 return t;
             }),
             py::arg("weights"))
        .def_readonly("weights", &KeywordTable::weights);

    py::class_<CompiledKeywordTable>(m, "CompiledKeywordTable")
        .def_static("compile", &CompiledKeywordTable::compile, py::arg("table"),
                    py::arg("vocab"));

    m.def(
        "extract_keywords",
        [](const std::vector<std::string>& name_paths, int top_n) {
            KeywordParams params;
            params.top_n = top_n;
            auto scored = extract_project_keywords(build_project_text(name_paths),
                                                   Stopwords::default_english(), params);
            std::vector<std::pair<std::string, double>> out;
            for (const auto& kw : scored) out.emplace_back(kw.text, kw.score);
            return out;
        },
        py::arg("name_paths"), py::arg("top_n") = 100,
        "Ranked (keyword, score) pairs for one project's file paths; lower scores are better");

    // labelling functions
    m.def(
        "keyword_lf",
        [](const std::map<std::string, int>& terms, const CompiledKeywordTable& table,
           std::size_t vocab_size) { return keyword_lf(dict_to_document(terms), table, vocab_size); },
        py::arg("terms"), py::arg("table"), py::arg("vocab_size"));
    m.def("random_lf", &random_lf, py::arg("node_path"), py::arg("seed"), py::arg("vocab_size"));

    m.def(
        "filter_annotation",
        [](const LabelDistribution& dist, double threshold) {
            return filter_annotation(dist, FilterConfig{threshold});
        },
        py::arg("dist"), py::arg("threshold"));
    m.def(
        "transform",
        [](const LabelDistribution& dist, const std::string& kind, double tp_threshold) {
            return transform(dist, TransformConfig{transform_kind_from_name(kind), tp_threshold});
        },
        py::arg("dist"), py::arg("kind"), py::arg("tp_threshold") = 0.05);

    // ensembles
    m.def("cascade", &cascade, py::arg("members"));
    m.def("vote", &vote, py::arg("voters"), py::arg("pool") = 10);

    // aggregation
    m.def(
        "aggregate",
        [](const std::vector<LabelDistribution>& dists) {
            std::vector<const LabelDistribution*> ptrs;
            ptrs.reserve(dists.size());
            for (const auto& d : dists) ptrs.push_back(&d);
            return aggregate_files(ptrs);
        },
        py::arg("file_dists"));
    m.def(
        "top_k_labels",
        [](const LabelDistribution& dist, int k) { return top_k_labels(dist, k); },
        py::arg("dist"), py::arg("k"));

    // evaluation
    m.def(
        "package_cohesion",
        [](const std::vector<LabelDistribution>& dists) {
            std::vector<const LabelDistribution*> ptrs;
            for (const auto& d : dists) ptrs.push_back(&d);
            return package_cohesion(ptrs);
        },
        py::arg("file_dists"));
    m.def(
        "cohens_kappa",
        [](const std::vector<int>& a, const std::vector<int>& b) -> py::object {
            auto k = cohens_kappa(a, b);
            return k ? py::cast(*k) : py::none();
        },
        py::arg("a"), py::arg("b"));

    // pipeline stages, mirroring the CLI
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("corpus_dir", &RunConfig::corpus_dir)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("labels_path", &RunConfig::labels_path)
        .def_readwrite("truth_path", &RunConfig::truth_path)
        .def_readwrite("thresholds", &RunConfig::thresholds)
        .def_readwrite("transforms", &RunConfig::transforms)
        .def_readwrite("tp_threshold", &RunConfig::tp_threshold)
        .def_readwrite("top_k", &RunConfig::top_k)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("jobs", &RunConfig::jobs)
        .def("add_lf",
             [](RunConfig& c, const std::string& spec) { c.lfs.push_back(parse_lf_spec(spec)); })
        .def("add_ensemble", [](RunConfig& c, const std::string& spec) {
            c.ensembles.push_back(parse_ensemble_spec(spec));
        });

    m.def("ingest", &cmd_ingest, py::arg("config"));
    m.def("keywords", &cmd_keywords, py::arg("config"));
    m.def("annotate", &cmd_annotate, py::arg("config"));
    m.def("aggregate", &cmd_aggregate, py::arg("config"));
    m.def("evaluate", &cmd_evaluate, py::arg("config"));
}
