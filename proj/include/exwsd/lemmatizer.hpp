#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "exwsd/corpus.hpp"

namespace exwsd {

struct LemmaResult {
    std::string lemma;
    std::optional<MorphForm> morph;  // only for noun and verb tags

    bool operator==(const LemmaResult&) const = default;
};

/// Rule-based English lemmatizer used when a token line has no lemma.
///
/// Verbs go through an irregular table covering the common ambiguous verbs,
/// then the regular -s/-es/-ies, -ed, -ing and -en rules with consonant
/// undoubling and e-restoration. Nouns strip plural suffixes. Any other tag
/// returns the lowercased surface and no morphological form.
LemmaResult lemmatize_fallback(std::string_view surface, std::string_view pos);

}  // namespace exwsd
