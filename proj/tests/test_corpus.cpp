#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "imbtext/corpus.hpp"
#include "imbtext/rng.hpp"

using namespace imbtext;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

LabeledCorpus fixed_ratio_corpus(std::size_t n, double ratio1, std::uint64_t seed) {
    // deterministic label layout spread by a seeded shuffle
    LabeledCorpus corpus;
    corpus.name = "fixture";
    std::size_t n1 = std::size_t(ratio1 * double(n));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);
    corpus.docs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int label = order[i] < n1 ? 1 : 0;
        corpus.docs[i] = {"doc " + std::to_string(i), label};
    }
    return corpus;
}

} // namespace

TEST_CASE("load_csv reads rows in order") {
    auto path = temp_file("imbtext_basic.csv");
    write_file(path, "text,label\nfirst doc,0\nsecond doc,1\nthird doc,0\n");
    LabeledCorpus corpus = load_csv(path, "text", "label");
    CHECK(corpus.size() == 3);
    CHECK(corpus.docs[0].text == "first doc");
    CHECK(corpus.docs[1].label == 1);
    CHECK(corpus.count_label(1) == 1);
    CHECK(corpus.minority_label() == 1);
}

TEST_CASE("load_csv names the offending row for a bad label") {
    auto path = temp_file("imbtext_badlabel.csv");
    write_file(path, "text,label\na,0\nb,1\nc,0\nd,1\ne,2\n");
    CHECK_THROWS_WITH_AS(load_csv(path, "text", "label"), doctest::Contains("row 6"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_csv(path, "missing", "label"), std::runtime_error);
}

TEST_CASE("load_csv rejects empty input") {
    auto path = temp_file("imbtext_empty.csv");
    write_file(path, "");
    CHECK_THROWS_AS(load_csv(path, "text", "label"), std::runtime_error);
    write_file(path, "text,label\n");
    CHECK_THROWS_AS(load_csv(path, "text", "label"), std::runtime_error);
}

TEST_CASE("quoted text with commas and newlines survives a round trip") {
    LabeledCorpus corpus;
    corpus.name = "roundtrip";
    corpus.docs = {{"plain text", 0},
                   {"contains, commas, many", 1},
                   {"has \"quotes\" inside", 0},
                   {"line\nbreak inside", 1},
                   {"", 0}};
    auto path = temp_file("imbtext_roundtrip.csv");
    save_csv(corpus, path);
    LabeledCorpus back = load_csv(path, "text", "label");
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(back.docs[i].text == corpus.docs[i].text);
        CHECK(back.docs[i].label == corpus.docs[i].label);
    }
}

TEST_CASE("make_splits produces disjoint parts of the requested sizes") {
    LabeledCorpus corpus = fixed_ratio_corpus(10000, 0.1, 17);
    SplitPlan plan{500, 125, 1000, 5, 99};
    ExperimentSplit split = make_splits(corpus, plan);

    REQUIRE(split.train_samples.size() == 5);
    for (const auto& t : split.train_samples) CHECK(t.size() == 500);
    CHECK(split.validation.size() == 125);
    CHECK(split.test.size() == 1000);

    std::set<std::size_t> seen;
    std::size_t total = 0;
    auto absorb = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx) seen.insert(i);
        total += idx.size();
    };
    for (const auto& idx : split.train_indices) absorb(idx);
    absorb(split.validation_indices);
    absorb(split.test_indices);
    CHECK(seen.size() == total); // no source index repeats anywhere
}

TEST_CASE("make_splits reports required versus available size") {
    LabeledCorpus corpus = fixed_ratio_corpus(10000, 0.1, 3);
    SplitPlan plan{2000, 1, 1, 5, 1}; // needs 10002
    CHECK_THROWS_WITH_AS(make_splits(corpus, plan), doctest::Contains("10002"),
                         std::invalid_argument);
}

TEST_CASE("make_splits is deterministic in the seed") {
    LabeledCorpus corpus = fixed_ratio_corpus(500, 0.2, 7);
    SplitPlan plan{100, 50, 100, 2, 42};
    ExperimentSplit a = make_splits(corpus, plan);
    ExperimentSplit b = make_splits(corpus, plan);
    CHECK(a.train_indices == b.train_indices);
    CHECK(a.validation_indices == b.validation_indices);
    CHECK(a.test_indices == b.test_indices);
}

TEST_CASE("train sample minority ratio tracks the corpus ratio") {
    LabeledCorpus corpus = fixed_ratio_corpus(20000, 0.1, 11);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitPlan plan{2000, 100, 100, 1, seed};
        ExperimentSplit split = make_splits(corpus, plan);
        double ratio = split.train_samples[0].minority_ratio();
        CHECK(std::fabs(ratio - 0.1) <= 0.05);
    }
}

TEST_CASE("stratified splits hit the label ratio almost exactly") {
    LabeledCorpus corpus = fixed_ratio_corpus(10000, 0.1, 5);
    SplitPlan plan{1000, 200, 500, 3, 8, true};
    ExperimentSplit split = make_splits(corpus, plan);
    for (const auto& t : split.train_samples)
        CHECK(std::fabs(t.minority_ratio() - 0.1) <= 0.01);
}

TEST_CASE("synthetic oracle is the prior when classes are indistinguishable") {
    SyntheticSpec spec;
    spec.n_docs = 200;
    spec.minority_ratio = 0.25;
    spec.vocab_size = 5;
    spec.length_mean = 6.0;
    spec.class0_word_dist = {0.2, 0.2, 0.2, 0.2, 0.2};
    spec.class1_word_dist = {0.2, 0.2, 0.2, 0.2, 0.2};
    spec.seed = 4;
    auto [corpus, oracle] = generate_synthetic(spec);
    for (const auto& doc : corpus.docs) CHECK(oracle(doc.text) == doctest::Approx(0.25));
}

TEST_CASE("a class-exclusive word forces the oracle to certainty") {
    SyntheticSpec spec;
    spec.n_docs = 500;
    spec.minority_ratio = 0.3;
    spec.vocab_size = 2;
    spec.length_mean = 3.0;
    spec.class0_word_dist = {0.0, 1.0}; // class 0 never emits w0
    spec.class1_word_dist = {1.0, 0.0}; // class 1 emits only w0
    spec.seed = 12;
    auto [corpus, oracle] = generate_synthetic(spec);
    for (const auto& doc : corpus.docs) {
        if (doc.text.find(synthetic_token(0)) != std::string::npos)
            CHECK(oracle(doc.text) == 1.0);
        else
            CHECK(oracle(doc.text) == 0.0);
    }
}

TEST_CASE("synthetic minority fraction concentrates near the requested ratio") {
    SyntheticSpec spec;
    spec.n_docs = 10000;
    spec.minority_ratio = 0.1;
    spec.vocab_size = 10;
    spec.length_mean = 8.0;
    auto [d0, d1] = default_synthetic_dists(10, 0.5);
    spec.class0_word_dist = d0;
    spec.class1_word_dist = d1;
    spec.seed = 33;
    auto [corpus, oracle] = generate_synthetic(spec);
    double frac = double(corpus.count_label(1)) / double(corpus.size());
    CHECK(std::fabs(frac - 0.1) <= 0.01);

    // law of total probability: the oracle averages to the prior
    double mean = 0.0;
    for (const auto& doc : corpus.docs) mean += oracle(doc.text);
    mean /= double(corpus.size());
    CHECK(std::fabs(mean - 0.1) <= 0.01);
}

TEST_CASE("splits export as JSON index lists") {
    LabeledCorpus corpus = fixed_ratio_corpus(300, 0.2, 2);
    SplitPlan plan{50, 30, 100, 2, 5};
    ExperimentSplit split = make_splits(corpus, plan);
    std::string json = splits_to_json(split);
    CHECK(json.find("\"train\"") != std::string::npos);
    CHECK(json.find("\"validation\"") != std::string::npos);
    CHECK(json.find("\"test\"") != std::string::npos);
}
