#include "exwsd/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exwsd/errors.hpp"

namespace exwsd {

DistanceModel::DistanceModel(std::size_t arity, std::vector<std::string> senses)
    : senses_(std::move(senses)), features_(arity) {
    const auto n = senses_.size();
    uniform_.assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
}

void DistanceModel::add(std::span<const std::string> values, std::size_t sense_index) {
    if (values.size() != features_.size()) {
        throw ArityMismatch("example has " + std::to_string(values.size()) + " values, expected " +
                            std::to_string(features_.size()));
    }
    const auto n = senses_.size();
    for (std::size_t f = 0; f < features_.size(); ++f) {
        auto& table = features_[f];
        auto [it, inserted] = table.ids.try_emplace(values[f], static_cast<std::int32_t>(table.values.size()));
        if (inserted) {
            table.values.push_back(values[f]);
            table.distributions.push_back({std::vector<std::uint32_t>(n, 0), 0});
            table.probabilities.resize(table.probabilities.size() + n, 0.0);
        }
        const auto id = static_cast<std::size_t>(it->second);
        auto& dist = table.distributions[id];
        ++dist.counts[sense_index];
        ++dist.total;
        for (std::size_t i = 0; i < n; ++i) {
            table.probabilities[id * n + i] = static_cast<double>(dist.counts[i]) / static_cast<double>(dist.total);
        }
    }
}

std::int32_t DistanceModel::value_id(std::size_t feature, std::string_view value) const {
    const auto& ids = features_.at(feature).ids;
    const auto it = ids.find(value);
    return it == ids.end() ? -1 : it->second;
}

const std::string& DistanceModel::value_at(std::size_t feature, std::int32_t id) const {
    return features_.at(feature).values.at(static_cast<std::size_t>(id));
}

const ValueDistribution& DistanceModel::distribution(std::size_t feature, std::int32_t id) const {
    return features_.at(feature).distributions.at(static_cast<std::size_t>(id));
}

const ValueDistribution* DistanceModel::find(std::size_t feature, std::string_view value) const {
    const auto id = value_id(feature, value);
    return id < 0 ? nullptr : &distribution(feature, id);
}

std::span<const double> DistanceModel::probabilities(std::size_t feature, std::int32_t id) const {
    if (id < 0) return uniform_;
    const auto n = senses_.size();
    return std::span<const double>(features_.at(feature).probabilities).subspan(static_cast<std::size_t>(id) * n, n);
}

double DistanceModel::value_distance(std::size_t feature, std::string_view v1, std::string_view v2) const {
    if (v1 == v2) return 0.0;
    return l1_distance(probabilities(feature, value_id(feature, v1)), probabilities(feature, value_id(feature, v2)));
}

bool DistanceModel::operator==(const DistanceModel& other) const {
    if (senses_ != other.senses_ || features_.size() != other.features_.size()) return false;
    for (std::size_t f = 0; f < features_.size(); ++f) {
        const auto& a = features_[f];
        const auto& b = other.features_[f];
        if (a.values.size() != b.values.size()) return false;
        for (std::size_t id = 0; id < a.values.size(); ++id) {
            const auto* theirs = other.find(f, a.values[id]);
            if (theirs == nullptr || !(*theirs == a.distributions[id])) return false;
        }
    }
    return true;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::fabs(p[i] - q[i]);
    return sum;
}

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    // Modulo bias is below n / 2^64.
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

ExemplarClassifier ExemplarClassifier::train(std::vector<Exemplar> exemplars, std::vector<std::string> senses) {
    if (exemplars.empty()) throw EmptyTraining();
    if (senses.empty()) {
        for (const auto& ex : exemplars) {
            if (std::find(senses.begin(), senses.end(), ex.sense) == senses.end()) senses.push_back(ex.sense);
        }
    }
    std::unordered_map<std::string, std::size_t> sense_index;
    for (std::size_t i = 0; i < senses.size(); ++i) sense_index.emplace(senses[i], i);

    const auto arity = exemplars.front().values.size();
    ExemplarClassifier model;
    model.distances_ = DistanceModel(arity, std::move(senses));
    for (const auto& ex : exemplars) {
        if (ex.values.size() != arity) {
            throw ArityMismatch("exemplar " + ex.id + " has " + std::to_string(ex.values.size()) +
                                " values, expected " + std::to_string(arity));
        }
        const auto it = sense_index.find(ex.sense);
        if (it == sense_index.end()) throw ConfigError("exemplar " + ex.id + " has unknown sense '" + ex.sense + "'");
        model.distances_.add(ex.values, it->second);
    }
    model.codes_.reserve(exemplars.size() * arity);
    for (const auto& ex : exemplars) {
        for (std::size_t f = 0; f < arity; ++f) model.codes_.push_back(model.distances_.value_id(f, ex.values[f]));
    }
    model.exemplars_ = std::move(exemplars);
    return model;
}

double ExemplarClassifier::example_distance(std::span<const std::string> a, std::span<const std::string> b) const {
    if (a.size() != arity() || b.size() != arity()) throw ArityMismatch("example arity does not match the model");
    double sum = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) sum += distances_.value_distance(f, a[f], b[f]);
    return sum;
}

Neighbors ExemplarClassifier::nearest(std::span<const std::string> values) const {
    const auto arity = this->arity();
    if (values.size() != arity) {
        throw ArityMismatch("test example has " + std::to_string(values.size()) + " values, model expects " +
                            std::to_string(arity));
    }

    // Distance from the test value to every stored value, per feature.
    std::vector<std::size_t> offsets(arity + 1, 0);
    for (std::size_t f = 0; f < arity; ++f) offsets[f + 1] = offsets[f] + distances_.value_count(f);
    std::vector<double> table(offsets.back());
    for (std::size_t f = 0; f < arity; ++f) {
        const auto test_id = distances_.value_id(f, values[f]);
        const auto test_probs = distances_.probabilities(f, test_id);
        const auto count = distances_.value_count(f);
        for (std::size_t id = 0; id < count; ++id) {
            const auto sid = static_cast<std::int32_t>(id);
            table[offsets[f] + id] = sid == test_id ? 0.0 : l1_distance(test_probs, distances_.probabilities(f, sid));
        }
    }

    Neighbors result;
    result.distance = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < exemplars_.size(); ++e) {
        const auto* code = codes_.data() + e * arity;
        double sum = 0.0;
        for (std::size_t f = 0; f < arity; ++f) sum += table[offsets[f] + static_cast<std::size_t>(code[f])];
        if (sum < result.distance) {
            result.distance = sum;
            result.ties.assign(1, e);
        } else if (sum == result.distance) {
            result.ties.push_back(e);
        }
    }
    return result;
}

Prediction ExemplarClassifier::classify(std::span<const std::string> values, std::mt19937_64& rng) const {
    const auto neighbors = nearest(values);
    const auto pick = neighbors.ties.size() == 1 ? neighbors.ties.front()
                                                 : neighbors.ties[draw_index(rng, neighbors.ties.size())];
    const auto& ex = exemplars_[pick];
    return {ex.sense, ex.id, pick, neighbors.distance, neighbors.ties.size()};
}

}  // namespace exwsd
