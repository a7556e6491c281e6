#include "exwsd/model.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "exwsd/errors.hpp"

namespace exwsd {

TrainedModel train(const FeatureSchema& schema, std::span<const ExampleVector> examples) {
    if (examples.empty()) throw EmptyTraining();
    std::vector<Exemplar> exemplars;
    exemplars.reserve(examples.size());
    for (const auto& ex : examples) {
        if (!ex.sense) throw ConfigError("training example " + ex.id + " has no sense label");
        auto values = ex.symbolic_values(schema.sources);
        if (values.size() != schema.arity()) {
            throw ArityMismatch("example " + ex.id + " has " + std::to_string(values.size()) +
                                " feature values, schema defines " + std::to_string(schema.arity()));
        }
        exemplars.push_back({ex.id, *ex.sense, std::move(values)});
    }
    return {schema, ExemplarClassifier::train(std::move(exemplars), schema.senses)};
}

TrainedModel train_on(const std::string& word, CoarsePos pos, std::span<const std::string> senses,
                      std::span<const Instance> instances, const SchemaParams& params, SourceSet sources) {
    auto schema = induce_schema(word, pos, senses, instances, params, sources);
    std::vector<ExampleVector> examples;
    examples.reserve(instances.size());
    for (const auto& inst : instances) examples.push_back(encode(inst, schema));
    return train(schema, examples);
}

TrainedModel train_on(const Dataset& dataset, const SchemaParams& params, SourceSet sources) {
    return train_on(dataset.word, dataset.pos, dataset.senses, dataset.instances, params, sources);
}

std::vector<std::string> model_values(const TrainedModel& model, const ExampleVector& example) {
    auto values = example.symbolic_values(model.schema.sources);
    if (values.size() != model.classifier.arity()) {
        throw ArityMismatch("example " + example.id + " has " + std::to_string(values.size()) +
                            " feature values, model expects " + std::to_string(model.classifier.arity()));
    }
    return values;
}

Prediction classify(const TrainedModel& model, const ExampleVector& example, std::mt19937_64& rng) {
    return model.classifier.classify(model_values(model, example), rng);
}

Prediction classify(const TrainedModel& model, const Instance& instance, std::mt19937_64& rng) {
    return classify(model, encode(instance, model.schema, false), rng);
}

namespace {

std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size()) throw CorruptModel("dangling escape in model file");
        switch (s[i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: throw CorruptModel("unknown escape in model file");
        }
    }
    return out;
}

void write_list(std::ostream& out, std::string_view key, const std::vector<std::string>& values) {
    out << key << '\t' << values.size();
    for (const auto& v : values) out << '\t' << escape(v);
    out << '\n';
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    // Next line split on tabs, fields unescaped. The first field must be `key`.
    std::vector<std::string> expect(std::string_view key) {
        auto fields = next();
        if (fields.empty() || fields.front() != key) {
            throw CorruptModel("model file line " + std::to_string(line_) + ": expected '" + std::string(key) + "'");
        }
        return fields;
    }

    std::vector<std::string> next() {
        if (pos_ >= bytes_.size()) throw CorruptModel("model file truncated after line " + std::to_string(line_));
        auto end = bytes_.find('\n', pos_);
        if (end == std::string_view::npos) throw CorruptModel("model file truncated at line " + std::to_string(line_ + 1));
        const auto line = bytes_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_;
        std::vector<std::string> fields;
        std::size_t begin = 0;
        while (true) {
            const auto tab = line.find('\t', begin);
            fields.push_back(unescape(line.substr(begin, tab == std::string_view::npos ? line.npos : tab - begin)));
            if (tab == std::string_view::npos) break;
            begin = tab + 1;
        }
        return fields;
    }

    bool at_end() const { return pos_ == bytes_.size(); }
    std::size_t line() const { return line_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

template <typename T>
T parse_number(const std::string& text) {
    T value{};
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc() || ptr != last || text.empty()) throw CorruptModel("bad number '" + text + "' in model file");
    return value;
}

// `key [tag] count values...`; `skip` is the number of tag fields.
std::vector<std::string> read_list(Reader& in, std::string_view key, std::size_t skip = 0) {
    auto fields = in.expect(key);
    if (fields.size() < 2 + skip) throw CorruptModel("model file: short '" + std::string(key) + "' line");
    const auto n = parse_number<std::size_t>(fields[1 + skip]);
    if (fields.size() != 2 + skip + n) throw CorruptModel("model file: '" + std::string(key) + "' count mismatch");
    return {fields.begin() + static_cast<std::ptrdiff_t>(2 + skip), fields.end()};
}

FeatureSchema read_schema(Reader& in) {
    FeatureSchema schema;
    auto word = in.expect("word");
    if (word.size() != 2) throw CorruptModel("model file: bad word line");
    schema.word = word[1];
    auto pos = in.expect("pos");
    const auto coarse = pos.size() == 2 ? coarse_pos_from_string(pos[1]) : std::nullopt;
    if (!coarse) throw CorruptModel("model file: bad pos line");
    schema.pos = *coarse;
    auto params = in.expect("params");
    if (params.size() != 4) throw CorruptModel("model file: bad params line");
    schema.params.m1 = parse_number<double>(params[1]);
    schema.params.m2 = parse_number<int>(params[2]);
    schema.params.m3 = parse_number<int>(params[3]);
    auto sources = in.expect("sources");
    if (sources.size() != 2) throw CorruptModel("model file: bad sources line");
    try {
        schema.sources = SourceSet::parse(sources[1]);
    } catch (const ConfigError& e) {
        throw CorruptModel(std::string("model file: ") + e.what());
    }
    schema.senses = read_list(in, "senses");
    schema.keywords = read_list(in, "keywords");
    for (std::size_t j = 0; j < kNumCollocations; ++j) {
        schema.colloc_values[j] = read_list(in, "colloc", 1);
    }
    schema.verbs = read_list(in, "verbs");
    return schema;
}

}  // namespace

std::string serialize_schema(const FeatureSchema& schema) {
    std::ostringstream out;
    out << "word\t" << escape(schema.word) << '\n';
    out << "pos\t" << to_string(schema.pos) << '\n';
    out << "params\t" << format_real(schema.params.m1) << '\t' << schema.params.m2 << '\t' << schema.params.m3 << '\n';
    out << "sources\t" << schema.sources.to_string() << '\n';
    write_list(out, "senses", schema.senses);
    write_list(out, "keywords", schema.keywords);
    for (std::size_t j = 0; j < kNumCollocations; ++j) {
        write_list(out, "colloc\t" + std::to_string(j + 1), schema.colloc_values[j]);
    }
    write_list(out, "verbs", schema.verbs);
    return out.str();
}

std::string save_model(const TrainedModel& model) {
    std::ostringstream out;
    out << kModelMagic << '\t' << kModelVersion << '\n';
    out << serialize_schema(model.schema);

    const auto& dist = model.classifier.distances();
    out << "arity\t" << dist.arity() << '\n';
    for (std::size_t f = 0; f < dist.arity(); ++f) {
        out << "feature\t" << f << '\t' << dist.value_count(f) << '\n';
        for (std::size_t id = 0; id < dist.value_count(f); ++id) {
            const auto sid = static_cast<std::int32_t>(id);
            out << "value\t" << escape(dist.value_at(f, sid));
            for (auto c : dist.distribution(f, sid).counts) out << '\t' << c;
            out << '\n';
        }
    }
    const auto& exemplars = model.classifier.exemplars();
    out << "exemplars\t" << exemplars.size() << '\n';
    for (const auto& ex : exemplars) {
        out << "exemplar\t" << escape(ex.id) << '\t' << escape(ex.sense);
        for (const auto& v : ex.values) out << '\t' << escape(v);
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

TrainedModel load_model(std::string_view bytes) {
    Reader in(bytes);
    const auto magic = in.next();
    if (magic.size() != 2 || magic[0] != kModelMagic) throw CorruptModel("not an exwsd model file");
    const auto version = parse_number<int>(magic[1]);
    if (version != kModelVersion) {
        throw VersionMismatch("model format version " + magic[1] + " is not supported (expected " +
                              std::to_string(kModelVersion) + ")");
    }

    TrainedModel model;
    model.schema = read_schema(in);
    const auto n_senses = model.schema.senses.size();

    const auto arity_line = in.expect("arity");
    if (arity_line.size() != 2) throw CorruptModel("model file: bad arity line");
    const auto arity = parse_number<std::size_t>(arity_line[1]);
    if (arity != model.schema.arity()) throw CorruptModel("model file: arity disagrees with schema");

    std::vector<std::vector<std::pair<std::string, std::vector<std::uint32_t>>>> tables(arity);
    for (std::size_t f = 0; f < arity; ++f) {
        const auto header = in.expect("feature");
        if (header.size() != 3 || parse_number<std::size_t>(header[1]) != f) throw CorruptModel("model file: bad feature line");
        const auto count = parse_number<std::size_t>(header[2]);
        for (std::size_t id = 0; id < count; ++id) {
            const auto row = in.expect("value");
            if (row.size() != 2 + n_senses) throw CorruptModel("model file: bad value line");
            std::vector<std::uint32_t> counts;
            for (std::size_t i = 0; i < n_senses; ++i) counts.push_back(parse_number<std::uint32_t>(row[2 + i]));
            tables[f].emplace_back(row[1], std::move(counts));
        }
    }

    const auto ex_line = in.expect("exemplars");
    if (ex_line.size() != 2) throw CorruptModel("model file: bad exemplars line");
    const auto n_exemplars = parse_number<std::size_t>(ex_line[1]);
    std::vector<Exemplar> exemplars;
    exemplars.reserve(n_exemplars);
    for (std::size_t e = 0; e < n_exemplars; ++e) {
        auto row = in.expect("exemplar");
        if (row.size() != 3 + arity) throw CorruptModel("model file: bad exemplar line");
        exemplars.push_back({row[1], row[2], {row.begin() + 3, row.end()}});
    }
    if (in.expect("end").size() != 1 || !in.at_end()) throw CorruptModel("model file: trailing data after end");

    try {
        model.classifier = ExemplarClassifier::train(std::move(exemplars), model.schema.senses);
    } catch (const Error& e) {
        throw CorruptModel(std::string("model file: ") + e.what());
    }
    // Stored tables must agree with the exemplars they were counted from.
    const auto& rebuilt = model.classifier.distances();
    for (std::size_t f = 0; f < arity; ++f) {
        if (tables[f].size() != rebuilt.value_count(f)) throw CorruptModel("model file: distribution table size mismatch");
        for (const auto& [value, counts] : tables[f]) {
            const auto* dist = rebuilt.find(f, value);
            if (dist == nullptr || dist->counts != counts) throw CorruptModel("model file: distribution table mismatch");
        }
    }
    return model;
}

void save_model_file(const TrainedModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file '" + path.string() + "'");
    out << save_model(model);
    if (!out) throw IoError("failed writing model file '" + path.string() + "'");
}

TrainedModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

}  // namespace exwsd
