#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace imbtext {

struct LabeledDoc {
    std::string text;
    int label = 0; // 0 or 1
};

// Raw texts with binary labels. Immutable by convention once built; safe to
// share read-only across workers.
struct LabeledCorpus {
    std::vector<LabeledDoc> docs;
    std::string name;

    std::size_t size() const { return docs.size(); }
    std::size_t count_label(int label) const;
    // Label held by fewer documents; ties resolve to 1.
    int minority_label() const;
    double minority_ratio() const;
};

struct SplitPlan {
    std::size_t train_size = 0;
    std::size_t validation_size = 0;
    std::size_t test_size = 0;
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    bool stratify = false;
};

// Disjoint train samples sharing one validation and one test set. Index
// vectors refer to positions in the source corpus and are kept for
// reproducibility audits.
struct ExperimentSplit {
    std::vector<LabeledCorpus> train_samples;
    LabeledCorpus validation;
    LabeledCorpus test;
    std::vector<std::vector<std::size_t>> train_indices;
    std::vector<std::size_t> validation_indices;
    std::vector<std::size_t> test_indices;
};

struct SyntheticSpec {
    std::size_t n_docs = 0;
    double minority_ratio = 0.1; // class 1 share, in (0, 0.5]
    std::size_t vocab_size = 0;
    double length_mean = 0.0;
    // per-class word distributions over the synthetic vocabulary, index 0 = class 0
    std::vector<double> class0_word_dist;
    std::vector<double> class1_word_dist;
    std::uint64_t seed = 0;
};

// Closed-form P(Y=1 | text) for corpora produced by generate_synthetic: two
// multinomial likelihoods over the word distributions plus the class prior.
class SyntheticOracle {
public:
    SyntheticOracle() = default;
    SyntheticOracle(double prior1, std::vector<double> dist0, std::vector<double> dist1);

    double operator()(const std::string& text) const;
    double prior1() const { return prior1_; }

private:
    double prior1_ = 0.5;
    std::vector<double> log_p0_, log_p1_; // -inf markers for zero-probability words
};

// One row per document; text/label columns located by header name.
// Throws on missing columns, unparseable labels (with row number) and empty files.
LabeledCorpus load_csv(const std::filesystem::path& path,
                       const std::string& text_col, const std::string& label_col);

void save_csv(const LabeledCorpus& corpus, const std::filesystem::path& path,
              const std::string& text_col = "text", const std::string& label_col = "label");

// Seeded permutation of corpus indices. With stratify set, the two label
// classes are interleaved so every prefix carries the corpus label ratio.
std::vector<std::size_t> shuffled_indices(const LabeledCorpus& corpus, std::uint64_t seed,
                                          bool stratify);

// Disjoint simple random splits (optionally stratified by label), deterministic
// in plan.seed. Throws if the corpus cannot satisfy the plan.
ExperimentSplit make_splits(const LabeledCorpus& corpus, const SplitPlan& plan);

// JSON document with the index lists of a split, for reproducibility audits.
std::string splits_to_json(const ExperimentSplit& split);

// Synthetic corpus with analytically known class probabilities. Labels are
// Bernoulli(minority_ratio) for class 1, lengths Poisson(length_mean)
// conditioned >= 1, words i.i.d. from the class distribution.
std::pair<LabeledCorpus, SyntheticOracle> generate_synthetic(const SyntheticSpec& spec);

// Synthetic token for word index i ("w0001"-style, stable ordering).
std::string synthetic_token(std::size_t index);

// Convenience constructor for a pair of overlapping Zipf-like word
// distributions. separation = 0 makes the classes indistinguishable; larger
// values tilt class 1 toward the tail of the class-0 distribution.
std::pair<std::vector<double>, std::vector<double>>
default_synthetic_dists(std::size_t vocab_size, double separation);

} // namespace imbtext
