#include "exwsd/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "exwsd/errors.hpp"
#include "exwsd/lemmatizer.hpp"

namespace exwsd {

namespace {

constexpr std::string_view kHeaderPrefix = "%%";
constexpr std::string_view kNounGroupPrefix = "%NG";

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const auto pos = line.find(sep, begin);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(begin));
            return out;
        }
        out.push_back(line.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

std::optional<std::size_t> parse_index(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t value = 0;
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

bool is_integer_label(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool numeric_less(const std::string& a, const std::string& b) {
    auto strip = [](std::string_view s) {
        const auto nz = s.find_first_not_of('0');
        return nz == std::string_view::npos ? std::string_view("0") : s.substr(nz);
    };
    const auto sa = strip(a);
    const auto sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
}

struct RecordHeader {
    std::size_t line = 0;
    std::string id;
    std::string word;
    CoarsePos pos = CoarsePos::Noun;
    std::size_t target = 0;
    std::string sense;
    std::optional<MorphForm> morph;
};

RecordHeader parse_header(std::string_view line, std::size_t line_no) {
    RecordHeader header;
    header.line = line_no;
    std::set<std::string, std::less<>> seen;
    std::string_view rest = line.substr(kHeaderPrefix.size());
    for (auto field : split(rest, ' ')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == field.size()) {
            throw ParseError(line_no, "malformed header field '" + std::string(field) + "'");
        }
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        if (!seen.emplace(key).second) {
            throw ParseError(line_no, "duplicate header field '" + std::string(key) + "'");
        }
        if (key == "id") {
            header.id = value;
        } else if (key == "word") {
            header.word = to_lower(value);
        } else if (key == "pos") {
            const auto pos = coarse_pos_from_string(value);
            if (!pos) throw ParseError(line_no, "pos must be N or V, got '" + std::string(value) + "'");
            header.pos = *pos;
        } else if (key == "target") {
            const auto index = parse_index(value);
            if (!index) throw ParseError(line_no, "target must be a non-negative integer");
            header.target = *index;
        } else if (key == "sense") {
            header.sense = value;
        } else if (key == "morph") {
            header.morph = morph_from_string(value);
            if (!header.morph) throw ParseError(line_no, "unknown morph form '" + std::string(value) + "'");
        } else {
            throw ParseError(line_no, "unknown header field '" + std::string(key) + "'");
        }
    }
    for (std::string_view required : {"id", "word", "pos", "target", "sense"}) {
        if (!seen.contains(required)) {
            throw ParseError(line_no, "header is missing '" + std::string(required) + "'");
        }
    }
    if (header.morph && !morph_applies_to(*header.morph, header.pos)) {
        throw ParseError(line_no, "morph form '" + std::string(to_string(*header.morph)) +
                                      "' does not apply to pos " + std::string(to_string(header.pos)));
    }
    return header;
}

Token parse_token(std::string_view line, std::size_t line_no) {
    const auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
        throw ParseError(line_no, "token line needs 2 or 3 tab-separated columns");
    }
    Token token;
    token.surface = fields[0];
    token.pos = fields[1];
    if (token.surface.empty()) throw ParseError(line_no, "empty token surface");
    if (token.pos.empty()) throw ParseError(line_no, "empty POS tag");
    if (fields.size() == 3 && !fields[2].empty()) {
        if (has_whitespace(fields[2])) throw ParseError(line_no, "lemma contains whitespace");
        token.lemma = to_lower(fields[2]);
    } else {
        token.lemma = lemmatize_fallback(token.surface, token.pos).lemma;
    }
    return token;
}

Span parse_noun_group(std::string_view line, std::size_t line_no) {
    const auto fields = split(line, ' ');
    if (fields.size() != 3) throw ParseError(line_no, "noun group line must be '%NG <start> <end>'");
    const auto start = parse_index(fields[1]);
    const auto end = parse_index(fields[2]);
    if (!start || !end) throw ParseError(line_no, "noun group bounds must be non-negative integers");
    if (*start > *end) throw ParseError(line_no, "noun group start exceeds end");
    return {*start, *end};
}

class DatasetBuilder {
public:
    void begin(RecordHeader header) {
        header_ = std::move(header);
        sentence_ = Sentence{};
        open_ = true;
    }

    bool open() const { return open_; }

    void add_token(Token token) { sentence_.tokens.push_back(std::move(token)); }
    void add_noun_group(Span span) { sentence_.noun_groups.push_back(span); }

    void finish() {
        open_ = false;
        const auto line = header_.line;
        if (sentence_.tokens.empty()) throw ParseError(line, "record has no tokens");
        if (header_.target >= sentence_.tokens.size()) {
            throw ParseError(line, "target index " + std::to_string(header_.target) + " out of range");
        }
        auto spans = sentence_.noun_groups;
        std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.start < b.start; });
        for (std::size_t i = 0; i < spans.size(); ++i) {
            if (spans[i].end >= sentence_.tokens.size()) throw ParseError(line, "noun group past sentence end");
            if (i > 0 && spans[i].start <= spans[i - 1].end) throw ParseError(line, "overlapping noun groups");
        }

        const Token& target = sentence_.tokens[header_.target];
        if (target.lemma != header_.word) {
            throw TargetMismatchError("record " + header_.id + ": target token lemma '" + target.lemma +
                                      "' does not match word '" + header_.word + "'");
        }
        if (dataset_.instances.empty()) {
            dataset_.word = header_.word;
            dataset_.pos = header_.pos;
        } else if (header_.word != dataset_.word || header_.pos != dataset_.pos) {
            throw TargetMismatchError("record " + header_.id + ": word/pos " + header_.word + "/" +
                                      std::string(to_string(header_.pos)) + " differs from dataset " +
                                      dataset_.word + "/" + std::string(to_string(dataset_.pos)));
        }
        if (!ids_.insert(header_.id).second) throw DuplicateIdError("duplicate instance id '" + header_.id + "'");

        auto morph = header_.morph;
        if (!morph) {
            morph = lemmatize_fallback(target.surface, target.pos).morph;
            if (!morph || !morph_applies_to(*morph, header_.pos)) {
                throw ParseError(line, "no morph given and none derivable from '" + target.surface + "'");
            }
        }

        Instance inst;
        inst.id = header_.id;
        inst.sentence = std::move(sentence_);
        inst.target_index = header_.target;
        inst.target_lemma = header_.word;
        inst.target_pos = header_.pos;
        inst.morph = *morph;
        inst.sense = header_.sense;
        if (sense_set_.insert(inst.sense).second) sense_order_.push_back(inst.sense);
        dataset_.instances.push_back(std::move(inst));
    }

    Dataset take() {
        dataset_.senses = order_senses(sense_order_);
        return std::move(dataset_);
    }

    bool empty() const { return dataset_.instances.empty(); }

private:
    Dataset dataset_;
    RecordHeader header_;
    Sentence sentence_;
    bool open_ = false;
    std::unordered_set<std::string> ids_;
    std::unordered_set<std::string> sense_set_;
    std::vector<std::string> sense_order_;
};

}  // namespace

std::string_view to_string(CoarsePos pos) { return pos == CoarsePos::Noun ? "N" : "V"; }

std::optional<CoarsePos> coarse_pos_from_string(std::string_view text) {
    if (text == "N") return CoarsePos::Noun;
    if (text == "V") return CoarsePos::Verb;
    return std::nullopt;
}

std::string_view to_string(MorphForm form) {
    switch (form) {
        case MorphForm::Singular: return "singular";
        case MorphForm::Plural: return "plural";
        case MorphForm::Infinitive: return "infinitive";
        case MorphForm::Present3sg: return "present-3sg";
        case MorphForm::Past: return "past";
        case MorphForm::PresentParticiple: return "present-participle";
        case MorphForm::PastParticiple: return "past-participle";
    }
    return "?";
}

std::optional<MorphForm> morph_from_string(std::string_view text) {
    for (auto form : {MorphForm::Singular, MorphForm::Plural, MorphForm::Infinitive, MorphForm::Present3sg,
                      MorphForm::Past, MorphForm::PresentParticiple, MorphForm::PastParticiple}) {
        if (to_string(form) == text) return form;
    }
    return std::nullopt;
}

bool morph_applies_to(MorphForm form, CoarsePos pos) {
    const bool nominal = form == MorphForm::Singular || form == MorphForm::Plural;
    return nominal == (pos == CoarsePos::Noun);
}

bool is_noun_tag(std::string_view tag) { return !tag.empty() && (tag[0] == 'N' || tag[0] == 'n'); }
bool is_verb_tag(std::string_view tag) { return !tag.empty() && (tag[0] == 'V' || tag[0] == 'v'); }

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> order_senses(std::vector<std::string> labels) {
    if (!labels.empty() && std::all_of(labels.begin(), labels.end(), is_integer_label)) {
        std::sort(labels.begin(), labels.end(), numeric_less);
    }
    return labels;
}

Dataset parse_dataset(std::istream& in) {
    DatasetBuilder builder;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (!builder.open()) {
            if (line.empty()) continue;
            if (!line.starts_with(kHeaderPrefix)) throw ParseError(line_no, "expected record header '%%'");
            builder.begin(parse_header(line, line_no));
            continue;
        }
        if (line.empty()) {
            builder.finish();
        } else if (line.starts_with(kHeaderPrefix)) {
            throw ParseError(line_no, "record header before blank line terminating previous record");
        } else if (line.starts_with(kNounGroupPrefix) && (line.size() == 3 || line[3] == ' ')) {
            builder.add_noun_group(parse_noun_group(line, line_no));
        } else {
            builder.add_token(parse_token(line, line_no));
        }
    }
    if (builder.open()) builder.finish();
    if (builder.empty()) throw ParseError(line_no == 0 ? 1 : line_no, "no header");
    return builder.take();
}

Dataset parse_dataset(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dataset(in);
}

Dataset read_dataset_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file '" + path.string() + "'");
    try {
        return parse_dataset(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.detail(), path.string());
    }
}

std::string serialize_dataset(const Dataset& dataset) {
    std::ostringstream out;
    for (const auto& inst : dataset.instances) {
        out << kHeaderPrefix << " id=" << inst.id << " word=" << inst.target_lemma
            << " pos=" << to_string(inst.target_pos) << " target=" << inst.target_index << " sense=" << inst.sense
            << " morph=" << to_string(inst.morph) << '\n';
        for (const auto& tok : inst.sentence.tokens) out << tok.surface << '\t' << tok.pos << '\t' << tok.lemma << '\n';
        for (const auto& ng : inst.sentence.noun_groups) out << kNounGroupPrefix << ' ' << ng.start << ' ' << ng.end << '\n';
        out << '\n';
    }
    return out.str();
}

}  // namespace exwsd
