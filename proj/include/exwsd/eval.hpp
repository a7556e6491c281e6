#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exwsd/corpus.hpp"
#include "exwsd/features.hpp"
#include "exwsd/model.hpp"

namespace exwsd {

struct TrialConfig {
    std::size_t n_trials = 100;
    std::size_t test_size = 600;
    std::uint64_t seed = 0;
    SourceSet features = SourceSet::all();
    SchemaParams params;
    unsigned threads = 0;  // 0 = hardware concurrency

    /// Throws ConfigError unless 0 < test_size < dataset_size, n_trials > 0,
    /// features is non-empty and params are valid.
    void validate(std::size_t dataset_size) const;
};

struct TrialReport {
    std::vector<double> accuracies;  // trial order
    double mean = 0.0;
    double stddev = 0.0;  // sample (n-1); 0 for a single trial
    double baseline_sense1 = 0.0;         // mean over trials
    double baseline_most_frequent = 0.0;  // mean over trials

    /// `<trial>\t<accuracy>` per trial (1-based), then mean, stddev and the
    /// two baselines; reals with four decimals.
    std::string to_tsv() const;
    bool operator==(const TrialReport&) const = default;
};

/// Throws LengthMismatch or EmptyInput.
double accuracy(std::span<const std::string> predictions, std::span<const std::string> gold);

double mean_of(std::span<const double> values);
double sample_stddev(std::span<const double> values);

/// Accuracy of always answering the first sense; throws EmptyInput.
double baseline_sense1(std::span<const Instance> test, std::span<const std::string> sense_order);

/// Modal training sense, ties going to the earlier sense in `sense_order`.
std::string most_frequent_sense(std::span<const Instance> train, std::span<const std::string> sense_order);

/// Accuracy of always answering the modal training sense; throws EmptyTraining.
double baseline_most_frequent(std::span<const Instance> train, std::span<const Instance> test,
                              std::span<const std::string> sense_order);

/// SplitMix64 finalizer of a combined pair; used for per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);
/// Seed of the tie-breaking source for one test instance in one trial.
std::uint64_t instance_seed(std::uint64_t trial_seed, std::string_view instance_id);

struct TrialSplit {
    std::vector<std::size_t> train;  // ascending dataset indices
    std::vector<std::size_t> test;   // ascending dataset indices
};

/// Uniform sample of `test_size` indices without replacement, seeded by
/// mix_seed(seed, trial); the remainder is the training portion.
TrialSplit split_for_trial(std::size_t dataset_size, std::size_t test_size, std::uint64_t seed, std::size_t trial);

/// Classifies `test` with per-instance tie-breaking sources derived from `trial_seed`.
std::vector<std::string> predict_all(const TrainedModel& model, std::span<const Instance> test,
                                     std::uint64_t trial_seed);

/// Invoked once per trial with the schema induced from that trial's training
/// portion. May be called from worker threads, never concurrently.
using SchemaObserver = std::function<void(std::size_t trial, const FeatureSchema& schema)>;

/// Repeated random train/test trials. Throws ConfigError.
TrialReport run_trials(const Dataset& dataset, const TrialConfig& config, const SchemaObserver& observer = {});

/// One run_trials per single knowledge source, ignoring config.features.
std::map<KnowledgeSource, TrialReport> ablate(const Dataset& dataset, const TrialConfig& config);

}  // namespace exwsd
