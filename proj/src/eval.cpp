#include "exwsd/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "exwsd/errors.hpp"

namespace exwsd {

void TrialConfig::validate(std::size_t dataset_size) const {
    if (n_trials == 0) throw ConfigError("number of trials must be positive");
    if (test_size == 0) throw ConfigError("test size must be positive");
    if (test_size >= dataset_size) {
        throw ConfigError("test size " + std::to_string(test_size) + " must be smaller than the dataset (" +
                          std::to_string(dataset_size) + " instances)");
    }
    if (features.empty()) throw ConfigError("feature subset is empty");
    params.validate();
}

namespace {

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

template <typename Index>
std::vector<Instance> gather(const std::vector<Instance>& all, const std::vector<Index>& indices) {
    std::vector<Instance> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(all[i]);
    return out;
}

struct TrialOutcome {
    double accuracy = 0.0;
    double sense1 = 0.0;
    double most_frequent = 0.0;
};

}  // namespace

std::string TrialReport::to_tsv() const {
    std::string out;
    for (std::size_t t = 0; t < accuracies.size(); ++t) {
        out += std::to_string(t + 1) + '\t' + fixed4(accuracies[t]) + '\n';
    }
    out += "mean\t" + fixed4(mean) + '\n';
    out += "stddev\t" + fixed4(stddev) + '\n';
    out += "baseline_sense1\t" + fixed4(baseline_sense1) + '\n';
    out += "baseline_most_frequent\t" + fixed4(baseline_most_frequent) + '\n';
    return out;
}

double accuracy(std::span<const std::string> predictions, std::span<const std::string> gold) {
    if (predictions.size() != gold.size()) {
        throw LengthMismatch(std::to_string(predictions.size()) + " predictions for " + std::to_string(gold.size()) +
                             " gold labels");
    }
    if (gold.empty()) throw EmptyInput("accuracy of an empty prediction list");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) hits += predictions[i] == gold[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double mean_of(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double baseline_sense1(std::span<const Instance> test, std::span<const std::string> sense_order) {
    if (test.empty()) throw EmptyInput("sense-1 baseline over an empty test set");
    if (sense_order.empty()) throw ConfigError("empty sense inventory");
    const auto& first = sense_order.front();
    const auto hits = std::count_if(test.begin(), test.end(), [&](const Instance& i) { return i.sense == first; });
    return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::string most_frequent_sense(std::span<const Instance> train, std::span<const std::string> sense_order) {
    if (train.empty()) throw EmptyTraining();
    std::vector<std::size_t> counts(sense_order.size(), 0);
    for (const auto& inst : train) {
        const auto it = std::find(sense_order.begin(), sense_order.end(), inst.sense);
        if (it == sense_order.end()) throw ConfigError("sense '" + inst.sense + "' is not in the inventory");
        ++counts[static_cast<std::size_t>(it - sense_order.begin())];
    }
    // max_element returns the first maximum, i.e. the earliest listed sense.
    const auto best = std::max_element(counts.begin(), counts.end());
    return sense_order[static_cast<std::size_t>(best - counts.begin())];
}

double baseline_most_frequent(std::span<const Instance> train, std::span<const Instance> test,
                              std::span<const std::string> sense_order) {
    const auto mode = most_frequent_sense(train, sense_order);
    if (test.empty()) throw EmptyInput("most-frequent baseline over an empty test set");
    const auto hits = std::count_if(test.begin(), test.end(), [&](const Instance& i) { return i.sense == mode; });
    return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t instance_seed(std::uint64_t trial_seed, std::string_view instance_id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : instance_id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix_seed(trial_seed, h);
}

TrialSplit split_for_trial(std::size_t dataset_size, std::size_t test_size, std::uint64_t seed, std::size_t trial) {
    if (test_size > dataset_size) throw ConfigError("test size exceeds dataset size");
    std::vector<std::size_t> order(dataset_size);
    for (std::size_t i = 0; i < dataset_size; ++i) order[i] = i;
    std::mt19937_64 rng(mix_seed(seed, trial));
    // Partial Fisher-Yates: the first test_size slots become a uniform sample.
    for (std::size_t i = 0; i < test_size; ++i) {
        const auto j = i + draw_index(rng, dataset_size - i);
        std::swap(order[i], order[j]);
    }
    TrialSplit split;
    split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_size));
    split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(test_size), order.end());
    std::sort(split.test.begin(), split.test.end());
    std::sort(split.train.begin(), split.train.end());
    return split;
}

std::vector<std::string> predict_all(const TrainedModel& model, std::span<const Instance> test,
                                     std::uint64_t trial_seed) {
    std::vector<std::string> predictions;
    predictions.reserve(test.size());
    for (const auto& inst : test) {
        std::mt19937_64 rng(instance_seed(trial_seed, inst.id));
        predictions.push_back(classify(model, inst, rng).sense);
    }
    return predictions;
}

TrialReport run_trials(const Dataset& dataset, const TrialConfig& config, const SchemaObserver& observer) {
    config.validate(dataset.instances.size());

    std::vector<TrialOutcome> outcomes(config.n_trials);
    std::mutex observer_mutex;
    auto run_one = [&](std::size_t t) {
        const auto split = split_for_trial(dataset.instances.size(), config.test_size, config.seed, t);
        const auto train = gather(dataset.instances, split.train);
        const auto test = gather(dataset.instances, split.test);

        const auto model = train_on(dataset.word, dataset.pos, dataset.senses, train, config.params, config.features);
        if (observer) {
            std::lock_guard lock(observer_mutex);
            observer(t, model.schema);
        }
        const auto predictions = predict_all(model, test, mix_seed(config.seed, t));
        std::vector<std::string> gold;
        gold.reserve(test.size());
        for (const auto& inst : test) gold.push_back(inst.sense);

        outcomes[t] = {accuracy(predictions, gold), baseline_sense1(test, dataset.senses),
                       baseline_most_frequent(train, test, dataset.senses)};
    };

    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.n_trials));
    if (workers <= 1) {
        for (std::size_t t = 0; t < config.n_trials; ++t) run_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < config.n_trials; t = next++) {
                    try {
                        run_one(t);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        pool.clear();
        if (failure) std::rethrow_exception(failure);
    }

    TrialReport report;
    std::vector<double> sense1;
    std::vector<double> most_frequent;
    for (const auto& o : outcomes) {
        report.accuracies.push_back(o.accuracy);
        sense1.push_back(o.sense1);
        most_frequent.push_back(o.most_frequent);
    }
    report.mean = mean_of(report.accuracies);
    report.stddev = sample_stddev(report.accuracies);
    report.baseline_sense1 = mean_of(sense1);
    report.baseline_most_frequent = mean_of(most_frequent);
    return report;
}

std::map<KnowledgeSource, TrialReport> ablate(const Dataset& dataset, const TrialConfig& config) {
    std::map<KnowledgeSource, TrialReport> reports;
    for (auto source : kAllSources) {
        auto single = config;
        single.features = SourceSet{source};
        reports.emplace(source, run_trials(dataset, single));
    }
    return reports;
}

}  // namespace exwsd
