#pragma once

#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "exwsd/classifier.hpp"
#include "exwsd/corpus.hpp"
#include "exwsd/features.hpp"

namespace exwsd {

/// A per-word classifier: induced schema plus the exemplar store built on it.
struct TrainedModel {
    FeatureSchema schema;
    ExemplarClassifier classifier;

    const std::string& word() const { return schema.word; }
    CoarsePos pos() const { return schema.pos; }
    const std::vector<std::string>& senses() const { return schema.senses; }
};

/// Stores labeled examples under `schema`. Throws EmptyTraining, or
/// ArityMismatch when an example's keyword vector does not fit the schema.
TrainedModel train(const FeatureSchema& schema, std::span<const ExampleVector> examples);

/// Schema induction, encoding and training on one training portion.
TrainedModel train_on(const std::string& word, CoarsePos pos, std::span<const std::string> senses,
                      std::span<const Instance> instances, const SchemaParams& params,
                      SourceSet sources = SourceSet::all());
TrainedModel train_on(const Dataset& dataset, const SchemaParams& params, SourceSet sources = SourceSet::all());

/// Flattened positional values of `example` under the model's active sources.
std::vector<std::string> model_values(const TrainedModel& model, const ExampleVector& example);

Prediction classify(const TrainedModel& model, const ExampleVector& example, std::mt19937_64& rng);
/// Encodes then classifies; throws SchemaMismatch on a different target word.
Prediction classify(const TrainedModel& model, const Instance& instance, std::mt19937_64& rng);

inline constexpr std::string_view kModelMagic = "exwsd-model";
inline constexpr int kModelVersion = 1;

/// Line-oriented text container: magic and version line, parameters, schema,
/// distribution tables, exemplars, terminating `end` line.
std::string save_model(const TrainedModel& model);
/// Throws VersionMismatch for another format version, CorruptModel otherwise.
TrainedModel load_model(std::string_view bytes);

void save_model_file(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model_file(const std::filesystem::path& path);

/// The schema section of the container, stable byte-for-byte.
std::string serialize_schema(const FeatureSchema& schema);

}  // namespace exwsd
