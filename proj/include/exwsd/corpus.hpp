#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exwsd {

/// Coarse part of speech of a disambiguated word.
enum class CoarsePos { Noun, Verb };

std::string_view to_string(CoarsePos pos);
std::optional<CoarsePos> coarse_pos_from_string(std::string_view text);

/// Morphological form of the target occurrence. The first two apply to
/// nouns, the rest to verbs.
enum class MorphForm {
    Singular,
    Plural,
    Infinitive,
    Present3sg,
    Past,
    PresentParticiple,
    PastParticiple,
};

std::string_view to_string(MorphForm form);
std::optional<MorphForm> morph_from_string(std::string_view text);
bool morph_applies_to(MorphForm form, CoarsePos pos);

// POS tags are opaque; only their first letter is ever inspected.
bool is_noun_tag(std::string_view tag);
bool is_verb_tag(std::string_view tag);

/// ASCII lowercase; bytes outside ASCII pass through unchanged.
std::string to_lower(std::string_view text);

struct Token {
    std::string surface;
    std::string pos;
    std::string lemma;

    bool operator==(const Token&) const = default;
};

/// Inclusive token span of a bracketed noun group.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;
    std::vector<Span> noun_groups;

    bool operator==(const Sentence&) const = default;
};

struct Instance {
    std::string id;
    Sentence sentence;
    std::size_t target_index = 0;
    std::string target_lemma;
    CoarsePos target_pos = CoarsePos::Noun;
    MorphForm morph = MorphForm::Singular;
    std::string sense;

    const Token& target() const { return sentence.tokens.at(target_index); }
    bool operator==(const Instance&) const = default;
};

/// All sense-tagged occurrences of one word in one coarse POS.
struct Dataset {
    std::string word;
    CoarsePos pos = CoarsePos::Noun;
    std::vector<std::string> senses;
    std::vector<Instance> instances;

    bool operator==(const Dataset&) const = default;
};

/// Parses the instance file format. Record order is preserved.
///
/// Sense inventory order: when every label is a base-10 integer the senses
/// are sorted numerically (so "1" is the distinguished first sense),
/// otherwise they keep their order of first appearance.
///
/// Throws ParseError, DuplicateIdError or TargetMismatchError.
Dataset parse_dataset(std::istream& in);
Dataset parse_dataset(std::string_view text);

/// Reads and parses a file; IoError names the path when it cannot be opened.
Dataset read_dataset_file(const std::filesystem::path& path);

/// Writes the instance file format with every lemma column filled in.
std::string serialize_dataset(const Dataset& dataset);

/// Orders sense labels the way parse_dataset does.
std::vector<std::string> order_senses(std::vector<std::string> labels);

}  // namespace exwsd
