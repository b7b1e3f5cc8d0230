#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "imbtext/corpus.hpp"
#include "imbtext/decision.hpp"
#include "imbtext/vectorize.hpp"

namespace imbtext {

struct AugmentRequest {
    double target_ratio = 0.5; // desired minority share, in (0, 1)
    std::uint64_t seed = 0;
};

// Bookkeeping attached to every augmentation result.
struct AugmentInfo {
    std::string method;
    std::size_t added = 0;
    std::uint64_t seed = 0;
    bool borderline_fell_back = false; // borderline found no misclassified seeds
    std::size_t unchanged_docs = 0;    // EDA outputs emitted verbatim (no lexicon coverage)
};

enum class EdaVariant { synonym_replace, random_insert, random_delete };

using SynonymLexicon = std::map<std::string, std::vector<std::string>>;

struct EdaConfig {
    double alpha = 0.1; // fraction of tokens touched per sentence
    EdaVariant variant = EdaVariant::random_delete;
    SynonymLexicon lexicon;
    std::set<std::string> stopwords; // defaults to builtin_stopwords() when empty-initialized via make
};

struct RoseConfig {
    double shrinkage = 1.0; // 0 reduces to plain random oversampling of rows
};

struct SmoteConfig {
    std::size_t k_neighbors = 5;
    bool borderline = false;
    std::size_t borderline_knn_k = 5; // vote size for the misclassified-seed filter
};

enum class IowaVariant { frequency, diff_frequency, idf, diff_idf };

// Class-conditional word sampler: sentences of label `target_label` are drawn
// with Poisson(lambda) lengths (conditioned >= 1) and i.i.d. tokens from the
// weight vector g over the training vocabulary.
struct IowaModel {
    int target_label = 1;
    double lambda = 0.0;         // mean in-vocabulary token length of the class
    std::vector<double> weights; // g, a probability vector over vocab positions
    Vocabulary vocab;
    IowaVariant variant = IowaVariant::frequency;
};

// Small built-in English stopword list used by synonym replacement.
const std::set<std::string>& builtin_stopwords();

// `token<TAB>syn1,syn2,...` per line, UTF-8.
SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path);

// Minimal s with (n_min + s) / (n + s) >= target_ratio.
std::size_t synthetic_count_for_ratio(std::size_t n, std::size_t n_min, double target_ratio);

// The two-step scheme: each of plan.m added docs copies a uniformly chosen
// original doc of a class drawn from plan.weights. Classes with positive
// weight must be present.
std::pair<LabeledCorpus, AugmentInfo>
random_oversample(const LabeledCorpus& corpus, const AugmentationPlan& plan, std::uint64_t seed);

// Smoothed oversampling: synthetic minority rows are existing rows plus
// N(0, (shrinkage * h_j)^2) per coordinate, h_j the Silverman-style bandwidth
// over the minority rows; results rounded to counts and clamped at zero.
std::pair<DocTermMatrix, AugmentInfo>
rose_oversample(const DocTermMatrix& matrix, const RoseConfig& cfg, const AugmentRequest& req);

// Interpolation between a minority row and one of its k nearest minority
// neighbors. The borderline variant restricts seed rows to minority points
// outvoted by the other class among their knn_k nearest rows overall.
std::pair<DocTermMatrix, AugmentInfo>
smote_oversample(const DocTermMatrix& matrix, const SmoteConfig& cfg, const AugmentRequest& req);

// Sentence-level edit operations on copies of minority documents.
std::pair<LabeledCorpus, AugmentInfo>
eda_augment(const LabeledCorpus& corpus, const EdaConfig& cfg, const AugmentRequest& req);

IowaModel iowa_fit(const DocTermMatrix& matrix, int target_label, IowaVariant variant);

LabeledCorpus iowa_generate(const IowaModel& model, std::size_t count, std::uint64_t seed);

// Method descriptor for the generic entry points below and the runner.
enum class AugmentKind {
    random_oversampling,
    rose,
    smote,
    borderline_smote,
    eda_sr,
    eda_ri,
    eda_rd,
    iowa_frequency,
    iowa_diff_frequency,
    iowa_idf,
    iowa_diff_idf,
};

struct AugmentMethod {
    AugmentKind kind = AugmentKind::random_oversampling;
    RoseConfig rose;
    SmoteConfig smote;
    EdaConfig eda;
};

std::string augment_kind_name(AugmentKind kind);
AugmentKind augment_kind_from_name(const std::string& name);

// True for methods that produce text (and therefore need re-vectorization),
// false for the ones operating on count matrices.
bool is_text_method(AugmentKind kind);

// Adds the minimal number of synthetic minority samples reaching the target
// ratio and dispatches to the method. Text methods take and return corpora.
std::pair<LabeledCorpus, AugmentInfo>
balance_corpus(const LabeledCorpus& corpus, const AugmentMethod& method, const AugmentRequest& req);

std::pair<DocTermMatrix, AugmentInfo>
balance_matrix(const DocTermMatrix& matrix, const AugmentMethod& method, const AugmentRequest& req);

} // namespace imbtext
