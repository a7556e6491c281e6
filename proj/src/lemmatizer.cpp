#include "exwsd/lemmatizer.hpp"

#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace exwsd {

namespace {

struct Inflection {
    std::string_view lemma;
    MorphForm form;
};

// Irregular forms of the frequent ambiguous verbs plus be/have/do. Where the
// past and past participle coincide the form is reported as past; where the
// participle coincides with the base form it is reported as infinitive.
const std::unordered_map<std::string_view, Inflection>& irregular_verbs() {
    using M = MorphForm;
    static const std::unordered_map<std::string_view, Inflection> table = {
        {"became", {"become", M::Past}},      {"brought", {"bring", M::Past}},
        {"built", {"build", M::Past}},        {"came", {"come", M::Past}},
        {"drew", {"draw", M::Past}},          {"drawn", {"draw", M::PastParticiple}},
        {"fell", {"fall", M::Past}},          {"fallen", {"fall", M::PastParticiple}},
        {"gave", {"give", M::Past}},          {"given", {"give", M::PastParticiple}},
        {"goes", {"go", M::Present3sg}},      {"went", {"go", M::Past}},
        {"gone", {"go", M::PastParticiple}},  {"grew", {"grow", M::Past}},
        {"grown", {"grow", M::PastParticiple}}, {"held", {"hold", M::Past}},
        {"kept", {"keep", M::Past}},          {"knew", {"know", M::Past}},
        {"known", {"know", M::PastParticiple}}, {"led", {"lead", M::Past}},
        {"left", {"leave", M::Past}},         {"lay", {"lie", M::Past}},
        {"lain", {"lie", M::PastParticiple}}, {"lying", {"lie", M::PresentParticiple}},
        {"lost", {"lose", M::Past}},          {"meant", {"mean", M::Past}},
        {"met", {"meet", M::Past}},           {"paid", {"pay", M::Past}},
        {"rose", {"rise", M::Past}},          {"risen", {"rise", M::PastParticiple}},
        {"ran", {"run", M::Past}},            {"saw", {"see", M::Past}},
        {"seen", {"see", M::PastParticiple}}, {"sent", {"send", M::Past}},
        {"shown", {"show", M::PastParticiple}}, {"sat", {"sit", M::Past}},
        {"spoke", {"speak", M::Past}},        {"spoken", {"speak", M::PastParticiple}},
        {"stood", {"stand", M::Past}},        {"struck", {"strike", M::Past}},
        {"stricken", {"strike", M::PastParticiple}}, {"took", {"take", M::Past}},
        {"taken", {"take", M::PastParticiple}}, {"told", {"tell", M::Past}},
        {"thought", {"think", M::Past}},      {"wrote", {"write", M::Past}},
        {"written", {"write", M::PastParticiple}},
        {"am", {"be", M::Infinitive}},        {"is", {"be", M::Present3sg}},
        {"are", {"be", M::Infinitive}},       {"was", {"be", M::Past}},
        {"were", {"be", M::Past}},            {"been", {"be", M::PastParticiple}},
        {"being", {"be", M::PresentParticiple}}, {"has", {"have", M::Present3sg}},
        {"had", {"have", M::Past}},           {"does", {"do", M::Present3sg}},
        {"did", {"do", M::Past}},             {"done", {"do", M::PastParticiple}},
    };
    return table;
}

const std::unordered_set<std::string_view>& known_verbs() {
    static const std::unordered_set<std::string_view> verbs = {
        "add",     "appear",   "ask",     "become",  "believe",  "bring",    "build",    "call",
        "carry",   "change",   "come",    "consider", "continue", "determine", "develop", "draw",
        "expect",  "fall",     "give",    "go",      "grow",     "happen",   "help",     "hold",
        "indicate", "involve", "keep",    "know",    "lead",     "leave",    "lie",      "like",
        "live",    "look",     "lose",    "mean",    "meet",     "move",     "need",     "open",
        "pay",     "raise",    "read",    "receive", "remember", "require",  "return",   "rise",
        "run",     "see",      "seem",    "send",    "set",      "show",     "sit",      "speak",
        "stand",   "start",    "stop",    "strike",  "take",     "talk",     "tell",     "think",
        "turn",    "wait",     "walk",    "want",    "work",     "write",    "be",       "have",
        "do",
    };
    return verbs;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_plurals() {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        {"men", "man"},     {"women", "woman"}, {"children", "child"}, {"feet", "foot"},
        {"teeth", "tooth"}, {"mice", "mouse"},  {"geese", "goose"},    {"people", "person"},
    };
    return table;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) { return s.ends_with(suffix); }

bool known(std::string_view stem) { return known_verbs().contains(stem); }

// Undo consonant doubling before -ed/-ing ("stopp" -> "stop"); l, s, z and f
// are commonly doubled in base forms ("call", "pass").
bool undoubles(std::string_view stem) {
    if (stem.size() < 3) return false;
    const char last = stem.back();
    if (last != stem[stem.size() - 2] || is_vowel(last)) return false;
    return last != 'l' && last != 's' && last != 'z' && last != 'f';
}

// Whether a stem left by stripping -ed/-ing lost a silent e.
bool needs_e(std::string_view stem) {
    if (stem.size() < 2) return false;
    const char last = stem.back();
    if (last == 'v' || last == 'z' || last == 'c') return true;
    if (last == 'u' && stem[stem.size() - 2] != 'o') return true;
    for (std::string_view tail : {"at", "ir", "ur", "rs", "us", "is", "as", "ag", "dg", "ng"}) {
        if (!ends_with(stem, tail)) continue;
        // The u of "qu" is consonantal: "acquir" -> "acquire".
        const bool after_qu = stem.size() >= 4 && stem[stem.size() - 3] == 'u' && stem[stem.size() - 4] == 'q';
        const bool after_vowel = stem.size() >= 3 && is_vowel(stem[stem.size() - 3]) && !after_qu;
        // "sing" and "bring" keep a bare -ng; "chang" lost its e.
        if (tail == "ng") return stem.size() >= 3 && stem[stem.size() - 3] == 'a';
        // "treat", "pour" and "pair" end that way without an e.
        if (tail == "at" || tail == "ir" || tail == "ur") return !after_vowel;
        return true;
    }
    // Short consonant-vowel-consonant stems: "lik" -> "like", "hop" -> "hope".
    if (stem.size() == 3 && !is_vowel(stem[0]) && is_vowel(stem[1]) && !is_vowel(stem[2]) && stem[2] != 'w' &&
        stem[2] != 'x' && stem[2] != 'y') {
        return true;
    }
    return false;
}

std::string restore_stem(std::string stem) {
    if (known(stem)) return stem;
    if (known(stem + "e")) return stem + "e";
    if (undoubles(stem)) {
        std::string shorter = stem.substr(0, stem.size() - 1);
        if (known(shorter) || !known(shorter + "e")) return shorter;
    }
    if (needs_e(stem)) return stem + "e";
    return stem;
}

LemmaResult verb_lemma(const std::string& word) {
    if (const auto it = irregular_verbs().find(word); it != irregular_verbs().end()) {
        return {std::string(it->second.lemma), it->second.form};
    }
    if (known(word)) return {word, MorphForm::Infinitive};

    const auto n = word.size();
    if (n > 4 && ends_with(word, "ied")) return {word.substr(0, n - 3) + "y", MorphForm::Past};
    if (n > 3 && ends_with(word, "ed")) return {restore_stem(word.substr(0, n - 2)), MorphForm::Past};
    if (n > 4 && ends_with(word, "ing")) {
        std::string stem = word.substr(0, n - 3);
        if (stem.size() == 2 && stem[1] == 'y') {
            stem = stem.substr(0, 1) + "ie";  // "dying" -> "die"
        } else {
            stem = restore_stem(stem);
        }
        return {stem, MorphForm::PresentParticiple};
    }
    if (n > 3 && ends_with(word, "en")) {
        // Only for participles whose stem is recognisable ("taken", "fallen").
        const std::string stem = word.substr(0, n - 2);
        if (known(stem)) return {stem, MorphForm::PastParticiple};
        if (known(stem + "e")) return {stem + "e", MorphForm::PastParticiple};
        if (undoubles(stem) && known(stem.substr(0, stem.size() - 1) + "e")) {
            return {stem.substr(0, stem.size() - 1) + "e", MorphForm::PastParticiple};
        }
    }
    if (n > 4 && ends_with(word, "ies")) return {word.substr(0, n - 3) + "y", MorphForm::Present3sg};
    for (std::string_view sibilant : {"sses", "shes", "ches", "xes", "zes", "oes"}) {
        if (n > sibilant.size() && ends_with(word, sibilant)) return {word.substr(0, n - 2), MorphForm::Present3sg};
    }
    if (n > 2 && word.back() == 's' && !ends_with(word, "ss") && !ends_with(word, "us") && !ends_with(word, "is")) {
        return {word.substr(0, n - 1), MorphForm::Present3sg};
    }
    return {word, MorphForm::Infinitive};
}

LemmaResult noun_lemma(const std::string& word) {
    if (const auto it = irregular_plurals().find(word); it != irregular_plurals().end()) {
        return {std::string(it->second), MorphForm::Plural};
    }
    const auto n = word.size();
    if (n > 4 && ends_with(word, "ies")) return {word.substr(0, n - 3) + "y", MorphForm::Plural};
    for (std::string_view sibilant : {"sses", "shes", "ches", "xes", "zes"}) {
        if (n > sibilant.size() && ends_with(word, sibilant)) return {word.substr(0, n - 2), MorphForm::Plural};
    }
    if (n > 2 && word.back() == 's' && !ends_with(word, "ss") && !ends_with(word, "us") && !ends_with(word, "is")) {
        return {word.substr(0, n - 1), MorphForm::Plural};
    }
    return {word, MorphForm::Singular};
}

}  // namespace

LemmaResult lemmatize_fallback(std::string_view surface, std::string_view pos) {
    const std::string word = to_lower(surface);
    if (is_verb_tag(pos)) return verb_lemma(word);
    if (is_noun_tag(pos)) return noun_lemma(word);
    return {word, std::nullopt};
}

}  // namespace exwsd
