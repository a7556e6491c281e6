#include "exwsd/features.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "exwsd/errors.hpp"

namespace exwsd {

void SchemaParams::validate() const {
    if (!(m1 >= 0.0 && m1 <= 1.0)) throw ConfigError("m1 must be within [0, 1]");
    if (m2 < 1) throw ConfigError("m2 must be a positive integer");
    if (m3 < 1) throw ConfigError("m3 must be a positive integer");
}

std::string_view to_string(KnowledgeSource source) {
    switch (source) {
        case KnowledgeSource::PosMorph: return "pos";
        case KnowledgeSource::SurroundingWords: return "words";
        case KnowledgeSource::Collocations: return "colloc";
        case KnowledgeSource::VerbObject: return "verb";
    }
    return "?";
}

SourceSet SourceSet::parse(std::string_view text) {
    SourceSet set;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find(',', begin);
        if (end == std::string_view::npos) end = text.size();
        const auto name = text.substr(begin, end - begin);
        bool matched = false;
        for (auto s : kAllSources) {
            if (name == exwsd::to_string(s)) {
                set.bits_ |= static_cast<std::uint8_t>(s);
                matched = true;
            }
        }
        if (!matched) throw ConfigError("unknown knowledge source '" + std::string(name) + "' (expected pos, words, colloc, verb)");
        begin = end + 1;
    }
    if (set.empty()) throw ConfigError("feature subset is empty");
    return set;
}

std::string SourceSet::to_string() const {
    std::string out;
    for (auto s : kAllSources) {
        if (!contains(s)) continue;
        if (!out.empty()) out += ',';
        out += exwsd::to_string(s);
    }
    return out;
}

std::size_t FeatureSchema::arity() const {
    std::size_t n = 0;
    if (sources.contains(KnowledgeSource::PosMorph)) n += kPosWindow + 1;
    if (sources.contains(KnowledgeSource::SurroundingWords)) n += keywords.size();
    if (sources.contains(KnowledgeSource::Collocations)) n += kNumCollocations;
    if (sources.contains(KnowledgeSource::VerbObject)) n += 1;
    return n;
}

std::vector<std::string> ExampleVector::symbolic_values(SourceSet sources) const {
    std::vector<std::string> values;
    if (sources.contains(KnowledgeSource::PosMorph)) {
        values.insert(values.end(), pos_window.begin(), pos_window.end());
        values.emplace_back(to_string(morph));
    }
    if (sources.contains(KnowledgeSource::SurroundingWords)) {
        for (auto bit : keyword_bits) values.emplace_back(bit ? "1" : "0");
    }
    if (sources.contains(KnowledgeSource::Collocations)) {
        values.insert(values.end(), collocs.begin(), collocs.end());
    }
    if (sources.contains(KnowledgeSource::VerbObject)) values.push_back(verb);
    return values;
}

Selection select_predictive(std::span<const std::vector<std::string>> candidates,
                            std::span<const std::string> labels, std::span<const std::string> senses,
                            const SchemaParams& params, std::optional<std::string_view> excluded) {
    if (candidates.size() != labels.size()) throw LengthMismatch("candidates and labels differ in length");
    if (candidates.empty()) throw EmptyTraining();

    std::unordered_map<std::string_view, std::size_t> sense_index;
    for (std::size_t i = 0; i < senses.size(); ++i) sense_index.emplace(senses[i], i);

    struct Counts {
        int total = 0;
        std::vector<int> by_sense;
    };
    std::unordered_map<std::string, Counts> counts;
    std::set<std::string_view> seen;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const auto it = sense_index.find(labels[j]);
        if (it == sense_index.end()) throw ConfigError("sense '" + labels[j] + "' is not in the inventory");
        seen.clear();
        for (const auto& value : candidates[j]) {
            if (excluded && value == *excluded) continue;
            if (!seen.insert(value).second) continue;
            auto& c = counts[value];
            if (c.by_sense.empty()) c.by_sense.assign(senses.size(), 0);
            ++c.total;
            ++c.by_sense[it->second];
        }
    }

    std::vector<std::vector<std::pair<int, std::string_view>>> qualifying(senses.size());
    for (const auto& [value, c] : counts) {
        for (std::size_t i = 0; i < senses.size(); ++i) {
            const int hits = c.by_sense[i];
            if (hits >= params.m2 && static_cast<double>(hits) / c.total >= params.m1) {
                qualifying[i].emplace_back(hits, value);
            }
        }
    }

    Selection selection;
    std::set<std::string> chosen;
    for (std::size_t i = 0; i < senses.size(); ++i) {
        auto& list = qualifying[i];
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        if (list.size() > static_cast<std::size_t>(params.m3)) list.resize(params.m3);
        if (list.empty()) continue;
        auto& kept = selection.kept_by_sense[senses[i]];
        for (const auto& [hits, value] : list) {
            kept.emplace_back(value);
            chosen.emplace(value);
        }
    }
    selection.values.assign(chosen.begin(), chosen.end());
    return selection;
}

std::vector<std::string> keyword_candidates(const Instance& instance) {
    std::vector<std::string> out;
    const auto& tokens = instance.sentence.tokens;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != instance.target_index) out.push_back(to_lower(tokens[i].surface));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string collocation_string(const Sentence& sentence, std::size_t target, int left, int right) {
    const auto n = static_cast<long>(sentence.tokens.size());
    std::string out;
    for (int offset = left; offset <= right; ++offset) {
        if (offset == 0) continue;
        const long pos = static_cast<long>(target) + offset;
        if (!out.empty()) out += ' ';
        if (pos < 0) {
            out += kSentenceStart;
        } else if (pos >= n) {
            out += kSentenceEnd;
        } else {
            out += to_lower(sentence.tokens[static_cast<std::size_t>(pos)].surface);
        }
    }
    return out;
}

std::string extract_verb_object(const Instance& instance) {
    if (instance.target_pos != CoarsePos::Noun) return std::string(kNil);
    const auto& tokens = instance.sentence.tokens;
    for (const auto& group : instance.sentence.noun_groups) {
        if (group.end != instance.target_index) continue;
        if (group.start == 0) break;
        const Token& before = tokens[group.start - 1];
        if (is_verb_tag(before.pos)) return before.lemma;
        break;
    }
    return std::string(kNil);
}

namespace {

std::vector<std::string> labels_of(std::span<const Instance> train) {
    std::vector<std::string> labels;
    labels.reserve(train.size());
    for (const auto& inst : train) labels.push_back(inst.sense);
    return labels;
}

template <typename Extract>
std::vector<std::vector<std::string>> single_candidates(std::span<const Instance> train, Extract extract) {
    std::vector<std::vector<std::string>> out;
    out.reserve(train.size());
    for (const auto& inst : train) out.push_back({extract(inst)});
    return out;
}

bool in_sorted(const std::vector<std::string>& sorted, std::string_view value) {
    return std::binary_search(sorted.begin(), sorted.end(), value, std::less<>{});
}

}  // namespace

std::vector<std::string> select_keywords(std::span<const Instance> train, std::span<const std::string> senses,
                                         const SchemaParams& params) {
    if (train.empty()) throw EmptyTraining();
    std::vector<std::vector<std::string>> candidates;
    candidates.reserve(train.size());
    for (const auto& inst : train) candidates.push_back(keyword_candidates(inst));
    const auto labels = labels_of(train);
    return select_predictive(candidates, labels, senses, params).values;
}

std::array<std::vector<std::string>, kNumCollocations> select_collocations(std::span<const Instance> train,
                                                                           std::span<const std::string> senses,
                                                                           const SchemaParams& params) {
    if (train.empty()) throw EmptyTraining();
    const auto labels = labels_of(train);
    std::array<std::vector<std::string>, kNumCollocations> out;
    for (std::size_t j = 0; j < kNumCollocations; ++j) {
        const auto [left, right] = kCollocationOffsets[j];
        const auto candidates = single_candidates(train, [&](const Instance& inst) {
            return collocation_string(inst.sentence, inst.target_index, left, right);
        });
        out[j] = select_predictive(candidates, labels, senses, params).values;
    }
    return out;
}

std::vector<std::string> select_verbs(std::span<const Instance> train, std::span<const std::string> senses,
                                      const SchemaParams& params) {
    if (train.empty()) throw EmptyTraining();
    const auto candidates = single_candidates(train, extract_verb_object);
    const auto labels = labels_of(train);
    return select_predictive(candidates, labels, senses, params, kNil).values;
}

FeatureSchema induce_schema(const std::string& word, CoarsePos pos, std::span<const std::string> senses,
                            std::span<const Instance> train, const SchemaParams& params, SourceSet sources) {
    params.validate();
    if (sources.empty()) throw ConfigError("feature subset is empty");
    if (train.empty()) throw EmptyTraining();

    FeatureSchema schema;
    schema.word = word;
    schema.pos = pos;
    schema.senses.assign(senses.begin(), senses.end());
    schema.params = params;
    schema.sources = sources;
    if (sources.contains(KnowledgeSource::SurroundingWords)) schema.keywords = select_keywords(train, senses, params);
    if (sources.contains(KnowledgeSource::Collocations)) schema.colloc_values = select_collocations(train, senses, params);
    if (sources.contains(KnowledgeSource::VerbObject)) schema.verbs = select_verbs(train, senses, params);
    return schema;
}

ExampleVector encode(const Instance& instance, const FeatureSchema& schema, bool labeled) {
    if (instance.target_lemma != schema.word || instance.target_pos != schema.pos) {
        throw SchemaMismatch("instance " + instance.id + " targets " + instance.target_lemma + "/" +
                             std::string(to_string(instance.target_pos)) + ", schema is for " + schema.word + "/" +
                             std::string(to_string(schema.pos)));
    }
    ExampleVector ex;
    ex.id = instance.id;
    ex.morph = instance.morph;
    if (labeled) ex.sense = instance.sense;
    const auto& tokens = instance.sentence.tokens;
    const auto target = static_cast<long>(instance.target_index);

    if (schema.sources.contains(KnowledgeSource::PosMorph)) {
        static constexpr std::array<int, kPosWindow> offsets = {-3, -2, -1, 1, 2, 3};
        for (std::size_t i = 0; i < kPosWindow; ++i) {
            const long pos = target + offsets[i];
            ex.pos_window[i] = (pos < 0 || pos >= static_cast<long>(tokens.size()))
                                   ? std::string(kNullPos)
                                   : tokens[static_cast<std::size_t>(pos)].pos;
        }
    }
    if (schema.sources.contains(KnowledgeSource::SurroundingWords)) {
        const auto present = keyword_candidates(instance);
        ex.keyword_bits.reserve(schema.keywords.size());
        for (const auto& kw : schema.keywords) ex.keyword_bits.push_back(in_sorted(present, kw) ? 1 : 0);
    }
    if (schema.sources.contains(KnowledgeSource::Collocations)) {
        for (std::size_t j = 0; j < kNumCollocations; ++j) {
            const auto [left, right] = kCollocationOffsets[j];
            auto value = collocation_string(instance.sentence, instance.target_index, left, right);
            ex.collocs[j] = in_sorted(schema.colloc_values[j], value) ? std::move(value) : std::string(kNil);
        }
    }
    if (schema.sources.contains(KnowledgeSource::VerbObject)) {
        auto verb = extract_verb_object(instance);
        ex.verb = in_sorted(schema.verbs, verb) ? std::move(verb) : std::string(kNil);
    }
    return ex;
}

std::string describe_schema(const FeatureSchema& schema) {
    std::ostringstream out;
    auto list = [&](const std::vector<std::string>& values, std::string_view indent) {
        for (const auto& v : values) out << indent << v << '\n';
    };
    out << "word: " << schema.word << '\n';
    out << "pos: " << to_string(schema.pos) << '\n';
    out << "senses: " << schema.senses.size() << '\n';
    list(schema.senses, "  ");
    out << "params: m1=" << schema.params.m1 << " m2=" << schema.params.m2 << " m3=" << schema.params.m3 << '\n';
    out << "sources: " << schema.sources.to_string() << '\n';
    if (schema.sources.contains(KnowledgeSource::SurroundingWords)) {
        if (schema.keywords.empty()) {
            out << "keywords: (none)\n";
        } else {
            out << "keywords: " << schema.keywords.size() << '\n';
            list(schema.keywords, "  ");
        }
    }
    if (schema.sources.contains(KnowledgeSource::Collocations)) {
        out << "collocations:\n";
        for (std::size_t j = 0; j < kNumCollocations; ++j) {
            const auto [left, right] = kCollocationOffsets[j];
            out << "  C" << j + 1 << " [" << left << "," << right << "]: ";
            if (schema.colloc_values[j].empty()) {
                out << "(none)\n";
            } else {
                out << schema.colloc_values[j].size() << '\n';
                list(schema.colloc_values[j], "    ");
            }
        }
    }
    if (schema.sources.contains(KnowledgeSource::VerbObject)) {
        if (schema.verbs.empty()) {
            out << "verbs: (none)\n";
        } else {
            out << "verbs: " << schema.verbs.size() << '\n';
            list(schema.verbs, "  ");
        }
    }
    return out.str();
}

}  // namespace exwsd
