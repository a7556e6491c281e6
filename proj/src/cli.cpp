#include "exwsd/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "exwsd/corpus.hpp"
#include "exwsd/errors.hpp"
#include "exwsd/eval.hpp"
#include "exwsd/features.hpp"
#include "exwsd/model.hpp"

namespace exwsd {

namespace {

struct Options {
    std::string corpus;
    std::string model;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::size_t test_size = 600;
    SchemaParams params;
    std::string features = "pos,words,colloc,verb";
};

void add_params(CLI::App& cmd, Options& o) {
    cmd.add_option("--m1", o.params.m1, "minimum conditional probability")->capture_default_str();
    cmd.add_option("--m2", o.params.m2, "minimum co-occurrence count")->capture_default_str();
    cmd.add_option("--m3", o.params.m3, "maximum values per sense")->capture_default_str();
}

void add_trial_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--corpus", o.corpus, "instance file")->required();
    cmd.add_option("--trials", o.trials, "number of random trials")->capture_default_str();
    cmd.add_option("--test-size", o.test_size, "test instances per trial")->capture_default_str();
    cmd.add_option("--seed", o.seed, "random seed")->capture_default_str();
    add_params(cmd, o);
}

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

TrialConfig trial_config(const Options& o, SourceSet features) {
    TrialConfig config;
    config.n_trials = o.trials;
    config.test_size = o.test_size;
    config.seed = o.seed;
    config.features = features;
    config.params = o.params;
    return config;
}

std::string trial_header(std::string_view command, const Options& o, const TrialConfig& c) {
    std::ostringstream h;
    h << "# " << command << " corpus=" << o.corpus << " trials=" << c.n_trials << " test_size=" << c.test_size
      << " seed=" << c.seed;
    if (command == "eval") h << " features=" << c.features.to_string();
    h << " m1=" << c.params.m1 << " m2=" << c.params.m2 << " m3=" << c.params.m3 << '\n';
    return h.str();
}

int cmd_train(const Options& o, std::ostream& err) {
    o.params.validate();
    const auto sources = SourceSet::parse(o.features);
    const auto dataset = read_dataset_file(o.corpus);
    const auto model = train_on(dataset, o.params, sources);
    save_model_file(model, o.out);
    err << "trained " << dataset.word << "/" << to_string(dataset.pos) << " on " << dataset.instances.size()
        << " instances (" << model.schema.arity() << " features) -> " << o.out << '\n';
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const auto model = load_model_file(o.model);
    const auto dataset = read_dataset_file(o.corpus);
    if (dataset.word != model.word() || dataset.pos != model.pos()) {
        throw SchemaMismatch("corpus is for " + dataset.word + "/" + std::string(to_string(dataset.pos)) +
                             " but the model was trained for " + model.word() + "/" +
                             std::string(to_string(model.pos())));
    }
    out << "# classify model=" << o.model << " corpus=" << o.corpus << " seed=" << o.seed << '\n';
    for (const auto& inst : dataset.instances) {
        std::mt19937_64 rng(instance_seed(o.seed, inst.id));
        const auto p = classify(model, inst, rng);
        out << inst.id << '\t' << p.sense << '\t' << fixed4(p.distance) << '\n';
    }
    return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const auto sources = SourceSet::parse(o.features);
    const auto dataset = read_dataset_file(o.corpus);
    const auto config = trial_config(o, sources);
    config.validate(dataset.instances.size());
    const auto report = run_trials(dataset, config);
    out << trial_header("eval", o, config) << report.to_tsv();
    return kExitOk;
}

int cmd_ablate(const Options& o, std::ostream& out) {
    const auto dataset = read_dataset_file(o.corpus);
    const auto config = trial_config(o, SourceSet::all());
    config.validate(dataset.instances.size());
    const auto reports = ablate(dataset, config);
    out << trial_header("ablate", o, config);
    for (const auto& [source, report] : reports) {
        out << "# features=" << to_string(source) << '\n' << report.to_tsv();
    }
    return kExitOk;
}

int cmd_inspect(const Options& o, std::ostream& out) {
    const auto model = load_model_file(o.model);
    out << describe_schema(model.schema);
    out << "exemplars: " << model.classifier.exemplars().size() << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exemplar-based word sense disambiguation", "exwsd"};
    app.require_subcommand(1, 1);

    auto* train = app.add_subcommand("train", "induce a schema and write a model file");
    train->add_option("--corpus", o.corpus, "instance file")->required();
    train->add_option("--out", o.out, "model file to write")->required();
    train->add_option("--features", o.features, "comma list of pos,words,colloc,verb")->capture_default_str();
    add_params(*train, o);

    auto* classify_cmd = app.add_subcommand("classify", "label every instance of a corpus");
    classify_cmd->add_option("--model", o.model, "model file")->required();
    classify_cmd->add_option("--corpus", o.corpus, "instance file")->required();
    classify_cmd->add_option("--seed", o.seed, "tie-breaking seed")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "repeated random train/test trials");
    add_trial_flags(*eval, o);
    eval->add_option("--features", o.features, "comma list of pos,words,colloc,verb")->capture_default_str();

    auto* ablate_cmd = app.add_subcommand("ablate", "trials with one knowledge source at a time");
    add_trial_flags(*ablate_cmd, o);

    auto* inspect = app.add_subcommand("inspect", "print the schema stored in a model file");
    inspect->add_option("--model", o.model, "model file")->required();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("exwsd");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train->parsed()) return cmd_train(o, err);
        if (classify_cmd->parsed()) return cmd_classify(o, out);
        if (eval->parsed()) return cmd_eval(o, out);
        if (ablate_cmd->parsed()) return cmd_ablate(o, out);
        if (inspect->parsed()) return cmd_inspect(o, out);
    } catch (const ConfigError& e) {
        err << "exwsd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "exwsd: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace exwsd
