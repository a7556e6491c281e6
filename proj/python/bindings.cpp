#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "exwsd/corpus.hpp"
#include "exwsd/errors.hpp"
#include "exwsd/eval.hpp"
#include "exwsd/features.hpp"
#include "exwsd/lemmatizer.hpp"
#include "exwsd/model.hpp"

namespace py = pybind11;
using namespace exwsd;

namespace {

std::vector<Instance> to_instances(const py::object& obj) {
    if (py::isinstance<Dataset>(obj)) return obj.cast<const Dataset&>().instances;
    return obj.cast<std::vector<Instance>>();
}

TrialConfig make_config(std::size_t trials, std::size_t test_size, std::uint64_t seed, const std::string& features,
                        const SchemaParams& params) {
    TrialConfig config;
    config.n_trials = trials;
    config.test_size = test_size;
    config.seed = seed;
    config.features = SourceSet::parse(features);
    config.params = params;
    return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exemplar-based word sense disambiguation";

    // Translators run newest first, so the base class is registered first.
    auto base = py::register_exception<Error>(m, "ExwsdError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<CorruptModel>(m, "CorruptModel", base.ptr());

    py::class_<Instance>(m, "Instance")
        .def_readonly("id", &Instance::id)
        .def_readonly("sense", &Instance::sense)
        .def_readonly("target_index", &Instance::target_index)
        .def_readonly("target_lemma", &Instance::target_lemma)
        .def_property_readonly("pos", [](const Instance& i) { return std::string(to_string(i.target_pos)); })
        .def_property_readonly("morph", [](const Instance& i) { return std::string(to_string(i.morph)); })
        .def_property_readonly("tokens",
                               [](const Instance& i) {
                                   std::vector<std::tuple<std::string, std::string, std::string>> out;
                                   for (const auto& t : i.sentence.tokens) out.emplace_back(t.surface, t.pos, t.lemma);
                                   return out;
                               })
        .def_property_readonly("noun_groups",
                               [](const Instance& i) {
                                   std::vector<std::pair<std::size_t, std::size_t>> out;
                                   for (const auto& g : i.sentence.noun_groups) out.emplace_back(g.start, g.end);
                                   return out;
                               })
        .def("__repr__", [](const Instance& i) { return "<Instance " + i.id + " sense=" + i.sense + ">"; });

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("word", &Dataset::word)
        .def_property_readonly("pos", [](const Dataset& d) { return std::string(to_string(d.pos)); })
        .def_readonly("senses", &Dataset::senses)
        .def_readonly("instances", &Dataset::instances)
        .def("__len__", [](const Dataset& d) { return d.instances.size(); })
        .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; });

    m.def("parse_dataset", py::overload_cast<std::string_view>(&parse_dataset), py::arg("text"));
    m.def("read_dataset", [](const std::string& path) { return read_dataset_file(path); }, py::arg("path"));
    m.def("serialize_dataset", &serialize_dataset, py::arg("dataset"));

    m.def(
        "lemmatize_fallback",
        [](const std::string& surface, const std::string& pos) {
            const auto r = lemmatize_fallback(surface, pos);
            std::optional<std::string> morph;
            if (r.morph) morph = std::string(to_string(*r.morph));
            return py::make_tuple(r.lemma, morph);
        },
        py::arg("surface"), py::arg("pos"));

    std::vector<std::pair<int, int>> offsets;
    for (const auto& o : kCollocationOffsets) offsets.emplace_back(o.left, o.right);
    m.attr("COLLOCATION_OFFSETS") = offsets;

    m.def(
        "collocation_string",
        [](const Instance& inst, int left, int right) {
            return collocation_string(inst.sentence, inst.target_index, left, right);
        },
        py::arg("instance"), py::arg("left"), py::arg("right"));
    m.def("extract_verb_object", &extract_verb_object, py::arg("instance"));

    py::class_<SchemaParams>(m, "SchemaParams")
        .def(py::init([](double m1, int m2, int m3) {
                 SchemaParams p{m1, m2, m3};
                 p.validate();
                 return p;
             }),
             py::arg("m1") = 0.8, py::arg("m2") = 5, py::arg("m3") = 5)
        .def_readonly("m1", &SchemaParams::m1)
        .def_readonly("m2", &SchemaParams::m2)
        .def_readonly("m3", &SchemaParams::m3);

    py::class_<FeatureSchema>(m, "FeatureSchema")
        .def_readonly("word", &FeatureSchema::word)
        .def_readonly("senses", &FeatureSchema::senses)
        .def_readonly("keywords", &FeatureSchema::keywords)
        .def_property_readonly("colloc_values",
                               [](const FeatureSchema& s) {
                                   return std::vector<std::vector<std::string>>(s.colloc_values.begin(),
                                                                                s.colloc_values.end());
                               })
        .def_readonly("verbs", &FeatureSchema::verbs)
        .def_property_readonly("features", [](const FeatureSchema& s) { return s.sources.to_string(); })
        .def_property_readonly("arity", &FeatureSchema::arity)
        .def("describe", &describe_schema);

    m.def(
        "induce_schema",
        [](const Dataset& d, const SchemaParams& params, const std::string& features) {
            return induce_schema(d.word, d.pos, d.senses, d.instances, params, SourceSet::parse(features));
        },
        py::arg("dataset"), py::arg("params") = SchemaParams{}, py::arg("features") = "pos,words,colloc,verb");

    py::class_<TrainedModel>(m, "TrainedModel")
        .def_readonly("schema", &TrainedModel::schema)
        .def_property_readonly("exemplar_count",
                               [](const TrainedModel& tm) { return tm.classifier.exemplars().size(); })
        .def(
            "classify",
            [](const TrainedModel& tm, const Instance& inst, std::uint64_t seed) {
                std::mt19937_64 rng(seed);
                const auto p = classify(tm, inst, rng);
                return py::make_tuple(p.sense, p.exemplar_id, p.distance);
            },
            py::arg("instance"), py::arg("seed") = 0)
        .def(
            "value_distance",
            [](const TrainedModel& tm, std::size_t feature, const std::string& a, const std::string& b) {
                if (feature >= tm.classifier.arity()) throw py::index_error("feature position out of range");
                return tm.classifier.distances().value_distance(feature, a, b);
            },
            py::arg("feature"), py::arg("v1"), py::arg("v2"))
        .def("save", [](const TrainedModel& tm) { return py::bytes(save_model(tm)); });

    m.def(
        "train",
        [](const Dataset& d, const SchemaParams& params, const std::string& features) {
            return train_on(d, params, SourceSet::parse(features));
        },
        py::arg("dataset"), py::arg("params") = SchemaParams{}, py::arg("features") = "pos,words,colloc,verb");
    m.def(
        "load_model", [](const py::bytes& data) { return load_model(std::string(data)); }, py::arg("data"));

    py::class_<TrialReport>(m, "TrialReport")
        .def_readonly("accuracies", &TrialReport::accuracies)
        .def_readonly("mean", &TrialReport::mean)
        .def_readonly("stddev", &TrialReport::stddev)
        .def_readonly("baseline_sense1", &TrialReport::baseline_sense1)
        .def_readonly("baseline_most_frequent", &TrialReport::baseline_most_frequent)
        .def("to_tsv", &TrialReport::to_tsv);

    m.def(
        "accuracy",
        [](const std::vector<std::string>& predictions, const std::vector<std::string>& gold) {
            return accuracy(predictions, gold);
        },
        py::arg("predictions"), py::arg("gold"));
    m.def(
        "baseline_sense1",
        [](const py::object& test, const std::vector<std::string>& senses) {
            return baseline_sense1(to_instances(test), senses);
        },
        py::arg("test"), py::arg("senses"));
    m.def(
        "baseline_most_frequent",
        [](const py::object& train, const py::object& test, const std::vector<std::string>& senses) {
            return baseline_most_frequent(to_instances(train), to_instances(test), senses);
        },
        py::arg("train"), py::arg("test"), py::arg("senses"));

    m.def(
        "run_trials",
        [](const Dataset& d, std::size_t trials, std::size_t test_size, std::uint64_t seed,
           const std::string& features, const SchemaParams& params) {
            const auto config = make_config(trials, test_size, seed, features, params);
            py::gil_scoped_release release;
            return run_trials(d, config);
        },
        py::arg("dataset"), py::arg("trials") = 100, py::arg("test_size") = 600, py::arg("seed") = 0,
        py::arg("features") = "pos,words,colloc,verb", py::arg("params") = SchemaParams{});
    m.def(
        "ablate",
        [](const Dataset& d, std::size_t trials, std::size_t test_size, std::uint64_t seed,
           const SchemaParams& params) {
            const auto config = make_config(trials, test_size, seed, "pos,words,colloc,verb", params);
            std::map<KnowledgeSource, TrialReport> reports;
            {
                py::gil_scoped_release release;
                reports = ablate(d, config);
            }
            std::map<std::string, TrialReport> out;
            for (auto& [source, report] : reports) out.emplace(std::string(to_string(source)), std::move(report));
            return out;
        },
        py::arg("dataset"), py::arg("trials") = 100, py::arg("test_size") = 600, py::arg("seed") = 0,
        py::arg("params") = SchemaParams{});
}
