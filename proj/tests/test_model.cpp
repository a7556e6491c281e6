#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "exwsd/errors.hpp"
#include "exwsd/model.hpp"
#include "synthetic.hpp"

using namespace exwsd;

namespace {

TrainedModel small_model() {
    const auto d = testing::interest_like_corpus({40, 6, 10, 20, 45, 80}, 11);
    return train_on(d, SchemaParams{});
}

void check_same(const TrainedModel& a, const TrainedModel& b) {
    CHECK(a.schema == b.schema);
    CHECK(a.classifier.distances() == b.classifier.distances());
    CHECK(a.classifier.exemplars() == b.classifier.exemplars());
}

}  // namespace

TEST_CASE("training stores one exemplar per labeled example") {
    const auto d = testing::keyword_corpus(40, 4, 1);
    const auto model = train_on(d, SchemaParams{});
    CHECK(model.classifier.exemplars().size() == 40);
    CHECK(model.classifier.arity() == model.schema.arity());
    CHECK(model.schema.keywords == std::vector<std::string>{"cue1", "cue2", "cue3", "cue4"});
    CHECK(model.senses() == std::vector<std::string>{"1", "2", "3", "4"});
}

TEST_CASE("training errors") {
    const auto d = testing::keyword_corpus(20, 2, 1);
    const auto schema = induce_schema(d.word, d.pos, d.senses, d.instances, SchemaParams{});
    CHECK_THROWS_AS(train(schema, {}), EmptyTraining);
    auto unlabeled = encode(d.instances[0], schema, false);
    CHECK_THROWS_AS(train(schema, std::vector<ExampleVector>{unlabeled}), ConfigError);
    auto bad = encode(d.instances[0], schema);
    bad.keyword_bits.push_back(1);
    CHECK_THROWS_AS(train(schema, std::vector<ExampleVector>{bad}), ArityMismatch);
}

TEST_CASE("classifying the training corpus gives distance zero") {
    const auto d = testing::interest_like_corpus({40, 6, 10, 20, 45, 80}, 11);
    const auto model = train_on(d, SchemaParams{});
    for (const auto& inst : d.instances) {
        std::mt19937_64 rng(0);
        CHECK(classify(model, inst, rng).distance == 0.0);
    }
}

TEST_CASE("classify rejects another word") {
    const auto model = small_model();
    auto inst = testing::make_instance("x", {{"bank", "NN"}}, 0, "1");
    std::mt19937_64 rng(0);
    CHECK_THROWS_AS(classify(model, inst, rng), SchemaMismatch);
}

TEST_CASE("save and load round trip") {
    const auto model = small_model();
    const auto bytes = save_model(model);
    check_same(load_model(bytes), model);
    CHECK(save_model(load_model(bytes)) == bytes);

    const auto only_colloc =
        train_on(testing::keyword_corpus(40, 4, 2), SchemaParams{0.75, 3, 2}, SourceSet{KnowledgeSource::Collocations});
    check_same(load_model(save_model(only_colloc)), only_colloc);
}

TEST_CASE("odd bytes in values survive the container") {
    auto inst = testing::make_instance("tab\tid", {{"caf\xc3\xa9\\", "NN"}, {"interest", "NN"}, {"\xff", "X"}}, 1, "s 1");
    auto second = inst;
    second.id = "second";
    second.sense = "other";
    const auto d = testing::make_dataset({inst, second});
    const auto model = train_on(d, SchemaParams{0.5, 1, 5});
    check_same(load_model(save_model(model)), model);
}

TEST_CASE("damaged containers") {
    const auto bytes = save_model(small_model());
    SUBCASE("truncated") {
        for (std::size_t cut : {std::size_t{0}, std::size_t{5}, bytes.size() / 3, bytes.size() / 2, bytes.size() - 4}) {
            CAPTURE(cut);
            CHECK_THROWS_AS(load_model(bytes.substr(0, cut)), CorruptModel);
        }
    }
    SUBCASE("future version") {
        auto future = bytes;
        const auto tab = future.find('\t');
        future.replace(tab + 1, 1, "2");
        CHECK_THROWS_AS(load_model(future), VersionMismatch);
    }
    SUBCASE("wrong magic") { CHECK_THROWS_AS(load_model("hello\t1\n"), CorruptModel); }
    SUBCASE("trailing data") { CHECK_THROWS_AS(load_model(bytes + "extra\n"), CorruptModel); }
    SUBCASE("tables disagree with exemplars") {
        auto edited = bytes;
        const auto at = edited.find("\nvalue\t");
        REQUIRE(at != std::string::npos);
        const auto end = edited.find('\n', at + 1);
        const auto last_tab = edited.rfind('\t', end);
        edited.insert(last_tab + 1, "1");
        CHECK_THROWS_AS(load_model(edited), CorruptModel);
    }
}

TEST_CASE("model files") {
    const auto model = small_model();
    const std::string path = "test_model_roundtrip.model";
    save_model_file(model, path);
    check_same(load_model_file(path), model);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model_file("/nonexistent/dir/x.model"), IoError);
    CHECK_THROWS_AS(save_model_file(model, "/nonexistent/dir/x.model"), IoError);
}

TEST_CASE("schema induction is deterministic") {
    const auto d = testing::interest_like_corpus({40, 6, 10, 20, 45, 80}, 11);
    const auto a = induce_schema(d.word, d.pos, d.senses, d.instances, SchemaParams{});
    const auto b = induce_schema(d.word, d.pos, d.senses, d.instances, SchemaParams{});
    CHECK(serialize_schema(a) == serialize_schema(b));
}
