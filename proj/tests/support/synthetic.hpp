#pragma once

// Corpus generators for tests. Every generator is deterministic in its seed.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "exwsd/corpus.hpp"

namespace exwsd::testing {

struct TokenSpec {
    TokenSpec(std::string s, std::string p, std::string l = {})
        : surface(std::move(s)), pos(std::move(p)), lemma(std::move(l)) {}

    std::string surface;
    std::string pos;
    std::string lemma;  // empty: same as lowercased surface
};

/// Builds an instance whose target is `tokens[target]`.
Instance make_instance(const std::string& id, const std::vector<TokenSpec>& tokens, std::size_t target,
                       const std::string& sense, MorphForm morph = MorphForm::Singular, CoarsePos pos = CoarsePos::Noun,
                       std::vector<Span> noun_groups = {});

/// Dataset from instances; senses ordered as parse_dataset orders them.
Dataset make_dataset(std::vector<Instance> instances);

/// Noun "interest" with `n_senses` senses in round-robin. Every sentence is one
/// of a few sense-independent templates plus a sense-unique keyword placed
/// outside the collocation and POS windows.
Dataset keyword_corpus(std::size_t n_instances, std::size_t n_senses, std::uint64_t seed);

/// Counts per sense of the six-sense "interest" inventory.
inline const std::vector<std::size_t> kInterestSenseCounts = {361, 11, 67, 178, 499, 1253};

/// Noun "interest" with roughly twenty-token sentences in which every knowledge
/// source carries a noisy sense cue. `counts[i]` instances get sense i+1.
Dataset interest_like_corpus(const std::vector<std::size_t>& counts, std::uint64_t seed);

/// Small random corpus for selection oracles: up to `max_instances`
/// instances over a tiny vocabulary with sense-biased tokens, noun groups and
/// preceding verbs.
Dataset random_small_corpus(std::mt19937_64& rng, std::size_t max_instances);

}  // namespace exwsd::testing
