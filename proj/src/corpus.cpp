#include "imbtext/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "imbtext/csv.hpp"
#include "imbtext/rng.hpp"
#include "imbtext/vectorize.hpp"

#include <json.hpp>

namespace imbtext {

std::size_t LabeledCorpus::count_label(int label) const {
    return std::size_t(std::count_if(docs.begin(), docs.end(),
                                     [label](const LabeledDoc& d) { return d.label == label; }));
}

int LabeledCorpus::minority_label() const {
    return count_label(1) <= count_label(0) ? 1 : 0;
}

double LabeledCorpus::minority_ratio() const {
    if (docs.empty()) return 0.0;
    return double(count_label(minority_label())) / double(docs.size());
}

LabeledCorpus load_csv(const std::filesystem::path& path,
                       const std::string& text_col, const std::string& label_col) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());

    CsvReader reader(in);
    auto header = reader.next();
    if (!header) throw std::runtime_error("load_csv: empty file " + path.string());

    auto find_col = [&](const std::string& name) {
        auto it = std::find(header->begin(), header->end(), name);
        if (it == header->end())
            throw std::runtime_error("load_csv: column '" + name + "' not found in " + path.string());
        return std::size_t(it - header->begin());
    };
    std::size_t text_idx = find_col(text_col);
    std::size_t label_idx = find_col(label_col);

    LabeledCorpus corpus;
    corpus.name = path.stem().string();
    std::size_t row = 1; // header was row 1
    while (auto rec = reader.next()) {
        ++row;
        if (rec->size() == 1 && (*rec)[0].empty()) continue; // trailing blank line
        if (rec->size() <= std::max(text_idx, label_idx))
            throw std::runtime_error("load_csv: row " + std::to_string(row) + " has too few fields");
        const std::string& raw = (*rec)[label_idx];
        int label;
        if (raw == "0") label = 0;
        else if (raw == "1") label = 1;
        else
            throw std::runtime_error("load_csv: row " + std::to_string(row) +
                                     " column '" + label_col + "': label '" + raw +
                                     "' is not 0 or 1");
        corpus.docs.push_back({(*rec)[text_idx], label});
    }
    if (corpus.docs.empty())
        throw std::runtime_error("load_csv: no data rows in " + path.string());
    return corpus;
}

void save_csv(const LabeledCorpus& corpus, const std::filesystem::path& path,
              const std::string& text_col, const std::string& label_col) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path.string());
    write_csv_row(out, {text_col, label_col});
    for (const auto& d : corpus.docs)
        write_csv_row(out, {d.text, std::to_string(d.label)});
}

namespace {

std::vector<std::size_t> take(std::vector<std::size_t>& pool, std::size_t& cursor, std::size_t n) {
    std::vector<std::size_t> out(pool.begin() + cursor, pool.begin() + cursor + n);
    cursor += n;
    return out;
}

LabeledCorpus gather(const LabeledCorpus& corpus, const std::vector<std::size_t>& idx,
                     const std::string& name) {
    LabeledCorpus out;
    out.name = name;
    out.docs.reserve(idx.size());
    for (std::size_t i : idx) out.docs.push_back(corpus.docs[i]);
    return out;
}

} // namespace

std::vector<std::size_t> shuffled_indices(const LabeledCorpus& corpus, std::uint64_t seed,
                                          bool stratify) {
    Rng rng(derive_seed(seed, std::string_view("splits")));
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    if (!stratify) {
        rng.shuffle(order);
        return order;
    }
    // Per-class shuffles, then interleave classes proportionally so every
    // prefix of `order` carries approximately the corpus label ratio.
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < corpus.size(); ++i)
        by_class[corpus.docs[i].label].push_back(i);
    rng.shuffle(by_class[0]);
    rng.shuffle(by_class[1]);
    order.clear();
    std::size_t c0 = 0, c1 = 0;
    double ratio1 = double(by_class[1].size()) / double(corpus.size());
    while (c0 < by_class[0].size() || c1 < by_class[1].size()) {
        double want1 = double(order.size() + 1) * ratio1;
        if (c1 < by_class[1].size() && (double(c1 + 1) <= want1 || c0 >= by_class[0].size()))
            order.push_back(by_class[1][c1++]);
        else
            order.push_back(by_class[0][c0++]);
    }
    return order;
}

ExperimentSplit make_splits(const LabeledCorpus& corpus, const SplitPlan& plan) {
    if (plan.train_size == 0 || plan.validation_size == 0 || plan.test_size == 0 ||
        plan.repetitions == 0)
        throw std::invalid_argument("make_splits: sizes and repetitions must be positive");
    std::size_t required =
        plan.repetitions * plan.train_size + plan.validation_size + plan.test_size;
    if (required > corpus.size())
        throw std::invalid_argument("make_splits: plan requires " + std::to_string(required) +
                                    " documents but corpus has " + std::to_string(corpus.size()));

    std::vector<std::size_t> order = shuffled_indices(corpus, plan.seed, plan.stratify);

    ExperimentSplit split;
    std::size_t cursor = 0;
    for (std::size_t r = 0; r < plan.repetitions; ++r) {
        auto idx = take(order, cursor, plan.train_size);
        split.train_samples.push_back(gather(corpus, idx, corpus.name + "/train" + std::to_string(r)));
        split.train_indices.push_back(std::move(idx));
    }
    split.validation_indices = take(order, cursor, plan.validation_size);
    split.validation = gather(corpus, split.validation_indices, corpus.name + "/validation");
    split.test_indices = take(order, cursor, plan.test_size);
    split.test = gather(corpus, split.test_indices, corpus.name + "/test");
    return split;
}

std::string splits_to_json(const ExperimentSplit& split) {
    nlohmann::json j;
    j["train"] = split.train_indices;
    j["validation"] = split.validation_indices;
    j["test"] = split.test_indices;
    return j.dump(2);
}

SyntheticOracle::SyntheticOracle(double prior1, std::vector<double> dist0, std::vector<double> dist1)
    : prior1_(prior1) {
    auto to_log = [](const std::vector<double>& d) {
        std::vector<double> out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            out[i] = d[i] > 0.0 ? std::log(d[i]) : -std::numeric_limits<double>::infinity();
        return out;
    };
    log_p0_ = to_log(dist0);
    log_p1_ = to_log(dist1);
}

double SyntheticOracle::operator()(const std::string& text) const {
    // log-odds of class 1 given the token counts
    double ll0 = 0.0, ll1 = 0.0;
    for (const std::string& tok : tokenize(text)) {
        std::size_t idx;
        if (tok.size() < 2 || tok[0] != 'w') continue;
        try {
            idx = std::stoul(tok.substr(1));
        } catch (...) {
            continue;
        }
        if (idx >= log_p0_.size()) continue;
        ll0 += log_p0_[idx];
        ll1 += log_p1_[idx];
    }
    double l1 = std::log(prior1_) + ll1;
    double l0 = std::log(1.0 - prior1_) + ll0;
    if (std::isinf(l1) && std::isinf(l0)) return prior1_; // unreachable for generated text
    if (std::isinf(l1)) return 0.0;
    if (std::isinf(l0)) return 1.0;
    // stable logistic of (l1 - l0)
    double d = l1 - l0;
    if (d >= 0) return 1.0 / (1.0 + std::exp(-d));
    double e = std::exp(d);
    return e / (1.0 + e);
}

std::string synthetic_token(std::size_t index) {
    return "w" + std::to_string(index);
}

std::pair<LabeledCorpus, SyntheticOracle> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_docs == 0 || spec.vocab_size == 0)
        throw std::invalid_argument("generate_synthetic: n_docs and vocab_size must be positive");
    if (spec.minority_ratio <= 0.0 || spec.minority_ratio > 0.5)
        throw std::invalid_argument("generate_synthetic: minority_ratio must be in (0, 0.5]");
    if (spec.length_mean <= 0.0)
        throw std::invalid_argument("generate_synthetic: length_mean must be positive");
    auto check_dist = [&](const std::vector<double>& d, const char* which) {
        if (d.size() != spec.vocab_size)
            throw std::invalid_argument(std::string("generate_synthetic: ") + which +
                                        " distribution size does not match vocab_size");
        double sum = std::accumulate(d.begin(), d.end(), 0.0);
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument(std::string("generate_synthetic: ") + which +
                                        " distribution does not sum to 1");
        for (double p : d)
            if (p < 0.0)
                throw std::invalid_argument(std::string("generate_synthetic: ") + which +
                                            " distribution has a negative entry");
    };
    check_dist(spec.class0_word_dist, "class-0");
    check_dist(spec.class1_word_dist, "class-1");

    Rng rng(derive_seed(spec.seed, std::string_view("synthetic")));
    LabeledCorpus corpus;
    corpus.name = "synthetic";
    corpus.docs.reserve(spec.n_docs);

    std::vector<std::string> tokens(spec.vocab_size);
    for (std::size_t i = 0; i < spec.vocab_size; ++i) tokens[i] = synthetic_token(i);

    for (std::size_t i = 0; i < spec.n_docs; ++i) {
        int label = rng.uniform() < spec.minority_ratio ? 1 : 0;
        const auto& dist = label == 1 ? spec.class1_word_dist : spec.class0_word_dist;
        long len = 0;
        while (len < 1) len = rng.poisson(spec.length_mean);
        std::string text;
        for (long t = 0; t < len; ++t) {
            if (t) text.push_back(' ');
            text += tokens[rng.discrete(dist)];
        }
        corpus.docs.push_back({std::move(text), label});
    }
    return {std::move(corpus),
            SyntheticOracle(spec.minority_ratio, spec.class0_word_dist, spec.class1_word_dist)};
}

std::pair<std::vector<double>, std::vector<double>>
default_synthetic_dists(std::size_t vocab_size, double separation) {
    if (vocab_size == 0) throw std::invalid_argument("default_synthetic_dists: empty vocabulary");
    std::vector<double> zipf(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) zipf[i] = 1.0 / double(i + 1);
    double total = std::accumulate(zipf.begin(), zipf.end(), 0.0);
    for (double& w : zipf) w /= total;

    // class 1 blends the class-0 shape with its reverse
    std::vector<double> reversed(zipf.rbegin(), zipf.rend());
    std::vector<double> class1(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i)
        class1[i] = (1.0 - separation) * zipf[i] + separation * reversed[i];
    double s1 = std::accumulate(class1.begin(), class1.end(), 0.0);
    for (double& w : class1) w /= s1;
    return {zipf, class1};
}

} // namespace imbtext
