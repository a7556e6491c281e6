#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exwsd/corpus.hpp"

namespace exwsd {

/// Thresholds for keyword, collocation and verb selection.
struct SchemaParams {
    double m1 = 0.8;  // minimum conditional probability of the indicated sense
    int m2 = 5;       // minimum co-occurrence count with that sense
    int m3 = 5;       // maximum values kept per sense

    /// Throws ConfigError unless m1 is in [0,1] and m2, m3 are positive.
    void validate() const;
    bool operator==(const SchemaParams&) const = default;
};

enum class KnowledgeSource : std::uint8_t {
    PosMorph = 1,
    SurroundingWords = 2,
    Collocations = 4,
    VerbObject = 8,
};

inline constexpr std::array<KnowledgeSource, 4> kAllSources = {
    KnowledgeSource::PosMorph, KnowledgeSource::SurroundingWords, KnowledgeSource::Collocations,
    KnowledgeSource::VerbObject};

/// CLI name of a source: pos, words, colloc, verb.
std::string_view to_string(KnowledgeSource source);

/// A non-empty subset of knowledge sources.
class SourceSet {
public:
    constexpr SourceSet() = default;
    constexpr SourceSet(std::initializer_list<KnowledgeSource> sources) {
        for (auto s : sources) bits_ |= static_cast<std::uint8_t>(s);
    }

    static constexpr SourceSet all() {
        return {KnowledgeSource::PosMorph, KnowledgeSource::SurroundingWords, KnowledgeSource::Collocations,
                KnowledgeSource::VerbObject};
    }
    constexpr bool contains(KnowledgeSource s) const { return (bits_ & static_cast<std::uint8_t>(s)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t bits() const { return bits_; }
    constexpr bool operator==(const SourceSet&) const = default;

    /// Parses a comma list such as "pos,colloc"; throws ConfigError.
    static SourceSet parse(std::string_view text);
    /// Comma list in canonical order.
    std::string to_string() const;

private:
    std::uint8_t bits_ = 0;
};

struct CollocationOffset {
    int left;
    int right;
};

/// C1..C9, in feature order.
inline constexpr std::array<CollocationOffset, 9> kCollocationOffsets = {{
    {-1, -1}, {1, 1}, {-2, -1}, {-1, 1}, {1, 2}, {-3, -1}, {-2, 1}, {-1, 2}, {1, 3},
}};
inline constexpr std::size_t kNumCollocations = kCollocationOffsets.size();
inline constexpr std::size_t kPosWindow = 6;

// Reserved symbols. None can collide with a lowercased token or a POS tag
// read from the instance format, which never contains these exact strings.
inline constexpr std::string_view kNil = "<NIL>";
inline constexpr std::string_view kNullPos = "NULL-POS";
inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";

/// Per-word feature space induced from training instances.
struct FeatureSchema {
    std::string word;
    CoarsePos pos = CoarsePos::Noun;
    std::vector<std::string> senses;
    SchemaParams params;
    SourceSet sources = SourceSet::all();
    std::vector<std::string> keywords;  // sorted, defines K1..Km
    std::array<std::vector<std::string>, kNumCollocations> colloc_values;  // each sorted
    std::vector<std::string> verbs;  // sorted

    /// Number of symbolic positions the active sources contribute.
    std::size_t arity() const;
    bool operator==(const FeatureSchema&) const = default;
};

/// One instance in feature space. Fields of inactive sources stay empty.
struct ExampleVector {
    std::string id;
    std::array<std::string, kPosWindow> pos_window;  // L3, L2, L1, R1, R2, R3
    MorphForm morph = MorphForm::Singular;
    std::vector<std::uint8_t> keyword_bits;
    std::array<std::string, kNumCollocations> collocs;
    std::string verb;
    std::optional<std::string> sense;

    /// Flattens the active sources into positional symbolic values.
    std::vector<std::string> symbolic_values(SourceSet sources) const;
    bool operator==(const ExampleVector&) const = default;
};

/// Outcome of conditional-probability selection over one candidate space.
struct Selection {
    std::vector<std::string> values;                             // sorted, deduplicated
    std::map<std::string, std::vector<std::string>> kept_by_sense;  // sense -> values it kept, best first
};

/// Selects predictive candidate values. `candidates[j]` holds the values seen
/// with training instance j (duplicates count once), `labels[j]` its sense.
/// A value v survives when, for some sense i, N(i,v)/N(v) >= m1 and
/// N(i,v) >= m2 and v ranks within the m3 values with the largest N(i,v)
/// for that sense (ties broken by ascending value). `excluded` is never
/// selected.
Selection select_predictive(std::span<const std::vector<std::string>> candidates,
                            std::span<const std::string> labels, std::span<const std::string> senses,
                            const SchemaParams& params, std::optional<std::string_view> excluded = std::nullopt);

/// Lowercased surfaces of every token except the target occurrence; sorted, unique.
std::vector<std::string> keyword_candidates(const Instance& instance);

/// Lowercased surfaces at offsets left..right around the target, offset 0
/// skipped, joined by single spaces; out-of-sentence positions read <s>/</s>.
std::string collocation_string(const Sentence& sentence, std::size_t target, int left, int right);

/// Lemma of the verb governing a noun target via noun-group bracketing, or NIL.
std::string extract_verb_object(const Instance& instance);

std::vector<std::string> select_keywords(std::span<const Instance> train, std::span<const std::string> senses,
                                         const SchemaParams& params);
std::array<std::vector<std::string>, kNumCollocations> select_collocations(std::span<const Instance> train,
                                                                           std::span<const std::string> senses,
                                                                           const SchemaParams& params);
std::vector<std::string> select_verbs(std::span<const Instance> train, std::span<const std::string> senses,
                                      const SchemaParams& params);

/// Builds the schema for the active sources from training instances only.
/// Throws EmptyTraining; ConfigError on invalid params or empty sources.
FeatureSchema induce_schema(const std::string& word, CoarsePos pos, std::span<const std::string> senses,
                            std::span<const Instance> train, const SchemaParams& params,
                            SourceSet sources = SourceSet::all());

/// Encodes an instance; the sense is copied when `labeled` is set.
/// Throws SchemaMismatch when the target word/POS differs from the schema's.
ExampleVector encode(const Instance& instance, const FeatureSchema& schema, bool labeled = true);

/// Human-readable listing used by `inspect`.
std::string describe_schema(const FeatureSchema& schema);

}  // namespace exwsd
