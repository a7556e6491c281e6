#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exwsd/corpus.hpp"
#include "exwsd/errors.hpp"
#include "exwsd/features.hpp"
#include "exwsd/model.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace exwsd;
using testing::TokenSpec;

namespace {

// Space-separated words, all tagged NN; `target` indexes the word "interest".
Instance sentence(const std::string& id, const std::string& words, std::size_t target, const std::string& sense,
                  std::vector<Span> groups = {}) {
    std::istringstream in(words);
    std::vector<TokenSpec> tokens;
    for (std::string w; in >> w;) tokens.push_back({w, "NN"});
    return testing::make_instance(id, tokens, target, sense, MorphForm::Singular, CoarsePos::Noun, std::move(groups));
}

const std::vector<std::string> kTwoSenses = {"1", "6"};

// 50 sentences, 25 per sense; every one contains "the", six sense-6 ones contain "rate".
std::vector<Instance> rate_corpus() {
    std::vector<Instance> out;
    for (int i = 0; i < 50; ++i) {
        const bool money = i % 2 == 1;
        const bool with_rate = money && i < 12;
        out.push_back(sentence("s" + std::to_string(i), with_rate ? "the interest rate" : "the interest", 1,
                               money ? "6" : "1"));
    }
    return out;
}

std::vector<std::string> all_kept(const Selection& s, const std::string& sense) {
    const auto it = s.kept_by_sense.find(sense);
    return it == s.kept_by_sense.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace

TEST_CASE("collocation offsets are fixed") {
    REQUIRE(kCollocationOffsets.size() == 9);
    const int expected[9][2] = {{-1, -1}, {1, 1}, {-2, -1}, {-1, 1}, {1, 2}, {-3, -1}, {-2, 1}, {-1, 2}, {1, 3}};
    for (std::size_t j = 0; j < 9; ++j) {
        CHECK(kCollocationOffsets[j].left == expected[j][0]);
        CHECK(kCollocationOffsets[j].right == expected[j][1]);
    }
}

TEST_CASE("schema parameter defaults and validation") {
    const SchemaParams p;
    CHECK(p.m1 == 0.8);
    CHECK(p.m2 == 5);
    CHECK(p.m3 == 5);
    CHECK_THROWS_AS((SchemaParams{1.5, 5, 5}.validate()), ConfigError);
    CHECK_THROWS_AS((SchemaParams{-0.1, 5, 5}.validate()), ConfigError);
    CHECK_THROWS_AS((SchemaParams{0.8, 0, 5}.validate()), ConfigError);
    CHECK_THROWS_AS((SchemaParams{0.8, 5, 0}.validate()), ConfigError);
    CHECK_NOTHROW((SchemaParams{1.0, 1, 1}.validate()));
}

TEST_CASE("source sets") {
    CHECK(SourceSet::parse("colloc") == SourceSet{KnowledgeSource::Collocations});
    CHECK(SourceSet::parse("verb,pos").to_string() == "pos,verb");
    CHECK(SourceSet::all().to_string() == "pos,words,colloc,verb");
    CHECK_THROWS_AS(SourceSet::parse("pos,syntax"), ConfigError);
    CHECK_THROWS_AS(SourceSet::parse(""), ConfigError);
}

TEST_CASE("keyword selection by conditional probability") {
    const auto train = rate_corpus();
    const auto keywords = select_keywords(train, kTwoSenses, SchemaParams{});
    // rate: N=6, N(6)=6, cp 1.0; the: N=50 split 25/25, cp 0.5.
    CHECK(keywords == std::vector<std::string>{"rate"});
}

TEST_CASE("keyword condition 2 uses the qualifying sense") {
    auto train = rate_corpus();
    SchemaParams p;
    p.m2 = 7;
    CHECK(select_keywords(train, kTwoSenses, p).empty());
    p.m2 = 6;
    CHECK(select_keywords(train, kTwoSenses, p) == std::vector<std::string>{"rate"});
}

TEST_CASE("per-sense cap keeps the most frequent keywords") {
    // Seven keywords w1..w7 for sense 1 with counts 5..11; sense 2 sentences have none.
    std::vector<Instance> train;
    int id = 0;
    for (int n = 0; n < 11; ++n) {
        std::string words = "interest";
        for (int k = 1; k <= 7; ++k) {
            if (n < 4 + k) words += " w" + std::to_string(k);
        }
        train.push_back(sentence("a" + std::to_string(id++), words, 0, "1"));
    }
    for (int n = 0; n < 11; ++n) train.push_back(sentence("a" + std::to_string(id++), "interest other", 0, "2"));
    const std::vector<std::string> senses = {"1", "2"};
    const auto keywords = select_keywords(train, senses, SchemaParams{});
    CHECK(keywords == std::vector<std::string>{"other", "w3", "w4", "w5", "w6", "w7"});

    std::vector<std::vector<std::string>> candidates;
    std::vector<std::string> labels;
    for (const auto& inst : train) {
        candidates.push_back(keyword_candidates(inst));
        labels.push_back(inst.sense);
    }
    const auto sel = select_predictive(candidates, labels, senses, SchemaParams{});
    CHECK(all_kept(sel, "1") == std::vector<std::string>{"w7", "w6", "w5", "w4", "w3"});
    CHECK(all_kept(sel, "2") == std::vector<std::string>{"other"});
}

TEST_CASE("cap ties go to the lexicographically smaller value") {
    std::vector<Instance> train;
    for (int n = 0; n < 5; ++n) train.push_back(sentence("b" + std::to_string(n), "interest zeta alpha mu", 0, "1"));
    const std::vector<std::string> senses = {"1"};
    CHECK(select_keywords(train, senses, SchemaParams{0.8, 5, 2}) == std::vector<std::string>{"alpha", "mu"});
}

TEST_CASE("keyword candidates") {
    const auto inst = sentence("c", "The interest on Interest and the rate", 1, "1");
    // The target occurrence is excluded, other occurrences of the word count.
    CHECK(keyword_candidates(inst) == std::vector<std::string>{"and", "interest", "on", "rate", "the"});
}

TEST_CASE("collocation strings") {
    const auto a = sentence("a", "in the interest of", 2, "4");
    CHECK(collocation_string(a.sentence, 2, -2, 1) == "in the of");
    const auto b = sentence("b", "interest rates rose", 0, "6");
    CHECK(collocation_string(b.sentence, 0, -1, -1) == "<s>");
    CHECK(collocation_string(b.sentence, 0, -2, 1) == "<s> <s> rates");
    CHECK(collocation_string(b.sentence, 0, 1, 3) == "rates rose </s>");
    const auto c = sentence("c", "principal and interest", 2, "6");
    CHECK(collocation_string(c.sentence, 2, -2, -1) == "principal and");
    const auto d = sentence("d", "The Interest Rate", 1, "6");
    CHECK(collocation_string(d.sentence, 1, -1, 1) == "the rate");
}

TEST_CASE("collocation selection") {
    std::vector<Instance> train;
    // Eight sense-6 "interest rate ..." with varied third word, three "interest payments", and filler.
    for (int i = 0; i < 8; ++i) train.push_back(sentence("r" + std::to_string(i), "interest rate x" + std::to_string(i), 0, "6"));
    for (int i = 0; i < 3; ++i) train.push_back(sentence("p" + std::to_string(i), "interest payments due", 0, "6"));
    for (int i = 0; i < 8; ++i) train.push_back(sentence("f" + std::to_string(i), "interest in it", 0, "1"));
    const auto colloc = select_collocations(train, kTwoSenses, SchemaParams{});
    // (1,1) is C2, (1,2) is C5.
    CHECK(colloc[1] == std::vector<std::string>{"in", "rate"});
    CHECK(std::find(colloc[4].begin(), colloc[4].end(), "rate x0") == colloc[4].end());
    CHECK(colloc[4] == std::vector<std::string>{"in it"});
    // "payments" seen three times, below m2.
    CHECK(std::find(colloc[1].begin(), colloc[1].end(), "payments") == colloc[1].end());
    // Left contexts are all "<s>", spread over both senses.
    CHECK(colloc[0].empty());
}

TEST_CASE("verb-object extraction") {
    auto inst = testing::make_instance("v", {{"reduce", "VBP"}, {"interest", "NN"}, {"payments", "NNS", "payment"}}, 2,
                                       "6", MorphForm::Plural, CoarsePos::Noun, {{1, 2}});
    inst.target_lemma = "payment";
    CHECK(extract_verb_object(inst) == "reduce");

    const auto sample = parse_dataset(
        "%% id=i001 word=interest pos=N target=3 sense=6 morph=singular\n"
        "lower\tJJR\tlow\nrates\tNNS\trate\nreduce\tVBP\treduce\ninterest\tNN\tinterest\npayments\tNNS\tpayment\n"
        "%NG 0 1\n%NG 3 4\n");
    CHECK(extract_verb_object(sample.instances[0]) == kNil);  // target not last in its group

    const auto bare = testing::make_instance("w", {{"paid", "VBD", "pay"}, {"interest", "NN"}}, 1, "6");
    CHECK(extract_verb_object(bare) == kNil);  // no bracketing

    const auto lemma = testing::make_instance("x", {{"paid", "vbd", "pay"}, {"the", "DT"}, {"interest", "NN"}}, 2, "6",
                                              MorphForm::Singular, CoarsePos::Noun, {{1, 2}});
    CHECK(extract_verb_object(lemma) == "pay");

    const auto at_start = testing::make_instance("y", {{"interest", "NN"}, {"grew", "VBD", "grow"}}, 0, "1",
                                                 MorphForm::Singular, CoarsePos::Noun, {{0, 0}});
    CHECK(extract_verb_object(at_start) == kNil);

    auto verb_target = testing::make_instance("z", {{"pay", "VB"}, {"interest", "VB"}}, 1, "1", MorphForm::Infinitive,
                                              CoarsePos::Verb, {{1, 1}});
    CHECK(extract_verb_object(verb_target) == kNil);
}

TEST_CASE("verb selection") {
    std::vector<Instance> train;
    auto add = [&](const std::string& surface, const std::string& lemma, const std::string& sense) {
        train.push_back(testing::make_instance("v" + std::to_string(train.size()),
                                               {{surface, "VBD", lemma}, {"interest", "NN"}}, 1, sense,
                                               MorphForm::Singular, CoarsePos::Noun, {{1, 1}}));
    };
    for (int i = 0; i < 6; ++i) add("paid", "pay", "6");
    for (int i = 0; i < 5; ++i) add("was", "be", "6");
    for (int i = 0; i < 5; ++i) add("was", "be", "1");
    CHECK(select_verbs(train, kTwoSenses, SchemaParams{}) == std::vector<std::string>{"pay"});

    std::vector<Instance> nil;
    for (int i = 0; i < 10; ++i) nil.push_back(sentence("n" + std::to_string(i), "the interest", 1, "6"));
    CHECK(select_verbs(nil, kTwoSenses, SchemaParams{0.5, 1, 5}).empty());
}

TEST_CASE("selection of an empty training set") {
    const std::vector<Instance> none;
    CHECK_THROWS_AS(select_keywords(none, kTwoSenses, SchemaParams{}), EmptyTraining);
    CHECK_THROWS_AS(select_collocations(none, kTwoSenses, SchemaParams{}), EmptyTraining);
    CHECK_THROWS_AS(select_verbs(none, kTwoSenses, SchemaParams{}), EmptyTraining);
    CHECK_THROWS_AS(induce_schema("interest", CoarsePos::Noun, kTwoSenses, none, SchemaParams{}), EmptyTraining);
}

TEST_CASE("encoding") {
    const auto train = rate_corpus();
    const auto schema = induce_schema("interest", CoarsePos::Noun, kTwoSenses, train, SchemaParams{});
    REQUIRE(schema.keywords == std::vector<std::string>{"rate"});

    SUBCASE("no keywords present") {
        const auto v = encode(sentence("q", "the interest", 1, "1"), schema);
        CHECK(v.keyword_bits == std::vector<std::uint8_t>{0});
    }
    SUBCASE("surface matching, not lemma") {
        const auto sample = parse_dataset(
            "%% id=i001 word=interest pos=N target=3 sense=6 morph=singular\n"
            "lower\tJJR\tlow\nrates\tNNS\trate\nreduce\tVBP\treduce\ninterest\tNN\tinterest\npayments\tNNS\tpayment\n"
            "%NG 0 1\n%NG 3 4\n");
        const auto v = encode(sample.instances[0], schema);
        CHECK(v.keyword_bits == std::vector<std::uint8_t>{0});
        CHECK(v.pos_window == std::array<std::string, 6>{"JJR", "NNS", "VBP", "NNS", "NULL-POS", "NULL-POS"});
        CHECK(v.sense == std::optional<std::string>("6"));
        const auto with_surface = encode(sentence("r", "interest Rate", 0, "6"), schema);
        CHECK(with_surface.keyword_bits == std::vector<std::uint8_t>{1});
    }
    SUBCASE("target at index 0") {
        const auto v = encode(sentence("q", "interest rate", 0, "6"), schema, false);
        CHECK(v.pos_window[0] == kNullPos);
        CHECK(v.pos_window[1] == kNullPos);
        CHECK(v.pos_window[2] == kNullPos);
        CHECK(v.pos_window[3] == "NN");
        CHECK_FALSE(v.sense.has_value());
    }
    SUBCASE("unselected collocations and verbs collapse to NIL") {
        const auto v = encode(sentence("q", "a b interest c d", 2, "1"), schema);
        for (const auto& c : v.collocs) CHECK(c == kNil);
        CHECK(v.verb == kNil);
        CHECK(v.symbolic_values(SourceSet::all()).size() == schema.arity());
    }
    SUBCASE("wrong target word") {
        auto other = testing::make_instance("q", {{"bank", "NN"}}, 0, "1");
        CHECK_THROWS_AS(encode(other, schema), SchemaMismatch);
    }
}

TEST_CASE("inactive sources are empty") {
    const auto train = rate_corpus();
    const auto schema = induce_schema("interest", CoarsePos::Noun, kTwoSenses, train, SchemaParams{},
                                      SourceSet{KnowledgeSource::Collocations});
    CHECK(schema.keywords.empty());
    CHECK(schema.arity() == 9);
    const auto v = encode(train[0], schema);
    CHECK(v.symbolic_values(schema.sources).size() == 9);
}

TEST_CASE("selection agrees with exhaustive enumeration") {
    std::mt19937_64 rng(2024);
    const double m1s[] = {0.3, 0.5, 0.6, 0.8, 1.0};
    for (int round = 0; round < 40; ++round) {
        const auto d = testing::random_small_corpus(rng, 50);
        const SchemaParams p{m1s[rng() % 5], static_cast<int>(1 + rng() % 4), static_cast<int>(1 + rng() % 3)};
        CAPTURE(round);
        CHECK(select_keywords(d.instances, d.senses, p) == testing::oracle_keywords(d.instances, d.senses, p));
        CHECK(select_collocations(d.instances, d.senses, p) == testing::oracle_collocations(d.instances, d.senses, p));
        CHECK(select_verbs(d.instances, d.senses, p) == testing::oracle_verbs(d.instances, d.senses, p));
        for (const auto& inst : d.instances) {
            CHECK(extract_verb_object(inst) == testing::oracle_verb(inst));
            for (const auto& o : kCollocationOffsets) {
                CHECK(collocation_string(inst.sentence, inst.target_index, o.left, o.right) ==
                      testing::oracle_collocation(inst.sentence, inst.target_index, o.left, o.right));
            }
        }
    }
}

TEST_CASE("schema dump") {
    const auto train = rate_corpus();
    const auto schema = induce_schema("interest", CoarsePos::Noun, kTwoSenses, train, SchemaParams{});
    const auto text = describe_schema(schema);
    CHECK(text.find("keywords: 1\n  rate\n") != std::string::npos);
    CHECK(text.find("verbs: (none)") != std::string::npos);
    CHECK(text.find("C1 [-1,-1]") != std::string::npos);
}
