#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace exwsd {

/// Sense counts of one feature value over the training exemplars.
struct ValueDistribution {
    std::vector<std::uint32_t> counts;  // indexed like the sense inventory
    std::uint32_t total = 0;

    bool operator==(const ValueDistribution&) const = default;
};

/// Per-feature value -> sense distribution tables, and the value difference
/// metric over them:
///
///   d(v1, v2) = sum_i | C(v1,i)/C(v1) - C(v2,i)/C(v2) |
///
/// A value absent from the tables is given the uniform distribution over the
/// inventory. Identical values are always at distance 0.
class DistanceModel {
public:
    DistanceModel() = default;
    DistanceModel(std::size_t arity, std::vector<std::string> senses);

    /// Counts one labeled example. `values.size()` must equal arity().
    void add(std::span<const std::string> values, std::size_t sense_index);

    std::size_t arity() const { return features_.size(); }
    std::size_t n_senses() const { return senses_.size(); }
    const std::vector<std::string>& senses() const { return senses_; }

    /// Id of a value within its feature table, or -1 when unseen.
    std::int32_t value_id(std::size_t feature, std::string_view value) const;
    std::size_t value_count(std::size_t feature) const { return features_.at(feature).values.size(); }
    const std::string& value_at(std::size_t feature, std::int32_t id) const;
    const ValueDistribution& distribution(std::size_t feature, std::int32_t id) const;
    /// Nullptr for an unseen value.
    const ValueDistribution* find(std::size_t feature, std::string_view value) const;

    double value_distance(std::size_t feature, std::string_view v1, std::string_view v2) const;

    /// Conditional sense probabilities for a value id; -1 gives the uniform row.
    std::span<const double> probabilities(std::size_t feature, std::int32_t id) const;

    bool operator==(const DistanceModel& other) const;

private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };
    struct FeatureTable {
        std::unordered_map<std::string, std::int32_t, StringHash, std::equal_to<>> ids;
        std::vector<std::string> values;
        std::vector<ValueDistribution> distributions;
        std::vector<double> probabilities;  // values.size() x n_senses, row-major
    };

    std::vector<std::string> senses_;
    std::vector<FeatureTable> features_;
    std::vector<double> uniform_;
};

double l1_distance(std::span<const double> p, std::span<const double> q);

struct Exemplar {
    std::string id;
    std::string sense;
    std::vector<std::string> values;

    bool operator==(const Exemplar&) const = default;
};

/// Minimum distance over all exemplars and every exemplar attaining it.
struct Neighbors {
    double distance = 0.0;
    std::vector<std::size_t> ties;  // ascending exemplar indices
};

struct Prediction {
    std::string sense;
    std::string exemplar_id;
    std::size_t exemplar_index = 0;
    double distance = 0.0;
    std::size_t tie_count = 0;
};

/// 1-nearest-neighbor classifier over stored symbolic exemplars.
class ExemplarClassifier {
public:
    ExemplarClassifier() = default;

    /// Throws EmptyTraining, ArityMismatch, or ConfigError for a sense missing
    /// from `senses`. An empty `senses` takes the exemplars' labels in order
    /// of first appearance.
    static ExemplarClassifier train(std::vector<Exemplar> exemplars, std::vector<std::string> senses = {});

    const DistanceModel& distances() const { return distances_; }
    const std::vector<Exemplar>& exemplars() const { return exemplars_; }
    std::size_t arity() const { return distances_.arity(); }

    double example_distance(std::span<const std::string> a, std::span<const std::string> b) const;

    /// Exhaustive scan; throws ArityMismatch.
    Neighbors nearest(std::span<const std::string> values) const;

    /// Nearest exemplar's sense. A tie among several exemplars consumes exactly
    /// one draw from `rng`; a unique nearest exemplar consumes none.
    Prediction classify(std::span<const std::string> values, std::mt19937_64& rng) const;

private:
    DistanceModel distances_;
    std::vector<Exemplar> exemplars_;
    std::vector<std::int32_t> codes_;  // exemplars x arity value ids
};

/// Uniform index in [0, n) from one draw of the engine.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n);

}  // namespace exwsd
