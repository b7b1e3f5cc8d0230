#include "imbtext/augment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "imbtext/rng.hpp"

namespace imbtext {

const std::set<std::string>& builtin_stopwords() {
    static const std::set<std::string> words = {
        "a",   "an",  "the",  "and",  "or",   "but", "if",   "of",   "at",
        "by",  "for", "with", "about", "to",  "from", "in",  "on",   "is",
        "are", "was", "were", "be",   "this", "that", "it",
    };
    return words;
}

SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_synonym_lexicon: cannot open " + path.string());
    SynonymLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("load_synonym_lexicon: line " + std::to_string(line_no) +
                                     " has no tab separator");
        std::string token = line.substr(0, tab);
        std::vector<std::string> syns;
        std::stringstream rest(line.substr(tab + 1));
        std::string syn;
        while (std::getline(rest, syn, ','))
            if (!syn.empty()) syns.push_back(syn);
        if (syns.empty())
            throw std::runtime_error("load_synonym_lexicon: line " + std::to_string(line_no) +
                                     " has an empty synonym list");
        lex[std::move(token)] = std::move(syns);
    }
    return lex;
}

std::size_t synthetic_count_for_ratio(std::size_t n, std::size_t n_min, double target_ratio) {
    if (n == 0) throw std::invalid_argument("synthetic_count_for_ratio: empty sample");
    if (target_ratio <= 0.0 || target_ratio >= 1.0)
        throw std::invalid_argument("synthetic_count_for_ratio: target ratio must be in (0, 1)");
    double current = double(n_min) / double(n);
    if (current > target_ratio + 1e-12)
        throw std::invalid_argument("synthetic_count_for_ratio: minority ratio already above target");
    double estimate = (target_ratio * double(n) - double(n_min)) / (1.0 - target_ratio);
    std::size_t s = estimate > 0.0 ? std::size_t(std::ceil(estimate - 1e-9)) : 0;
    while (double(n_min + s) / double(n + s) < target_ratio) ++s;
    while (s > 0 && double(n_min + s - 1) / double(n + s - 1) >= target_ratio) --s;
    return s;
}

std::pair<LabeledCorpus, AugmentInfo>
random_oversample(const LabeledCorpus& corpus, const AugmentationPlan& plan, std::uint64_t seed) {
    plan.validate();
    if (plan.weights.size() != 2)
        throw std::invalid_argument("random_oversample: binary corpora take two weights");
    if (plan.n != corpus.size())
        throw std::invalid_argument("random_oversample: plan.n does not match corpus size");

    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < corpus.size(); ++i)
        by_class[corpus.docs[i].label].push_back(i);
    for (int k = 0; k < 2; ++k)
        if (plan.weights[k] > 0.0 && by_class[k].empty())
            throw std::invalid_argument("random_oversample: class " + std::to_string(k) +
                                        " has positive weight but no documents");

    Rng rng(derive_seed(seed, std::string_view("random_oversample")));
    LabeledCorpus out = corpus;
    out.docs.reserve(corpus.size() + plan.m);
    for (std::size_t i = 0; i < plan.m; ++i) {
        std::size_t k = rng.discrete(plan.weights);
        const auto& pool = by_class[k];
        out.docs.push_back(corpus.docs[pool[rng.uniform_index(pool.size())]]);
    }
    AugmentInfo info{augment_kind_name(AugmentKind::random_oversampling), plan.m, seed, false, 0};
    return {std::move(out), info};
}

namespace {

std::vector<std::size_t> label_rows(const DocTermMatrix& matrix, int label) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < matrix.n_docs; ++i)
        if (matrix.labels[i] == label) rows.push_back(i);
    return rows;
}

int matrix_minority_label(const DocTermMatrix& matrix) {
    return matrix.count_label(1) <= matrix.count_label(0) ? 1 : 0;
}

double sq_distance(const DocTermMatrix& m, std::size_t a, std::size_t b) {
    double d = 0.0;
    const std::uint32_t* ra = &m.counts[a * m.n_features()];
    const std::uint32_t* rb = &m.counts[b * m.n_features()];
    for (std::size_t j = 0; j < m.n_features(); ++j) {
        double diff = double(ra[j]) - double(rb[j]);
        d += diff * diff;
    }
    return d;
}

// k nearest of `candidates` to row `query` (query excluded), ties by index.
std::vector<std::size_t> k_nearest(const DocTermMatrix& m, std::size_t query,
                                   const std::vector<std::size_t>& candidates, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(candidates.size());
    for (std::size_t c : candidates)
        if (c != query) dist.emplace_back(sq_distance(m, query, c), c);
    std::size_t take = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + take, dist.end());
    std::vector<std::size_t> out(take);
    for (std::size_t i = 0; i < take; ++i) out[i] = dist[i].second;
    return out;
}

void append_row(DocTermMatrix& m, const std::vector<double>& values, int label) {
    for (double v : values) {
        double r = std::round(v);
        m.counts.push_back(std::uint32_t(std::max(0.0, r)));
    }
    m.labels.push_back(label);
    ++m.n_docs;
}

} // namespace

std::pair<DocTermMatrix, AugmentInfo>
rose_oversample(const DocTermMatrix& matrix, const RoseConfig& cfg, const AugmentRequest& req) {
    if (cfg.shrinkage < 0.0) throw std::invalid_argument("rose_oversample: negative shrinkage");
    int minority = matrix_minority_label(matrix);
    auto rows = label_rows(matrix, minority);
    if (rows.empty()) throw std::invalid_argument("rose_oversample: no minority rows");
    std::size_t s = synthetic_count_for_ratio(matrix.n_docs, rows.size(), req.target_ratio);

    AugmentInfo info{augment_kind_name(AugmentKind::rose), s, req.seed, false, 0};
    DocTermMatrix out = matrix;
    if (s == 0) return {std::move(out), info};
    if (cfg.shrinkage > 0.0 && rows.size() < 2)
        throw std::invalid_argument(
            "rose_oversample: minority standard deviation undefined with a single row");

    std::size_t d = matrix.n_features();
    std::size_t n_min = rows.size();
    std::vector<double> bandwidth(d, 0.0);
    if (cfg.shrinkage > 0.0) {
        double factor = std::pow(4.0 / (double(d + 2) * double(n_min)), 1.0 / double(d + 4));
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t r : rows) mean += matrix.at(r, j);
            mean /= double(n_min);
            double ss = 0.0;
            for (std::size_t r : rows) {
                double diff = double(matrix.at(r, j)) - mean;
                ss += diff * diff;
            }
            bandwidth[j] = factor * std::sqrt(ss / double(n_min - 1));
        }
    }

    Rng rng(derive_seed(req.seed, std::string_view("rose")));
    std::vector<double> values(d);
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t seed_row = rows[rng.uniform_index(n_min)];
        for (std::size_t j = 0; j < d; ++j) {
            double v = matrix.at(seed_row, j);
            if (cfg.shrinkage > 0.0 && bandwidth[j] > 0.0)
                v += rng.normal(0.0, cfg.shrinkage * bandwidth[j]);
            values[j] = v;
        }
        append_row(out, values, minority);
    }
    return {std::move(out), info};
}

std::pair<DocTermMatrix, AugmentInfo>
smote_oversample(const DocTermMatrix& matrix, const SmoteConfig& cfg, const AugmentRequest& req) {
    if (cfg.k_neighbors == 0) throw std::invalid_argument("smote_oversample: k_neighbors must be >= 1");
    int minority = matrix_minority_label(matrix);
    auto rows = label_rows(matrix, minority);
    if (rows.size() < cfg.k_neighbors + 1)
        throw std::invalid_argument("smote_oversample: needs at least k_neighbors + 1 minority rows, have " +
                                    std::to_string(rows.size()));
    std::size_t s = synthetic_count_for_ratio(matrix.n_docs, rows.size(), req.target_ratio);

    AugmentKind kind = cfg.borderline ? AugmentKind::borderline_smote : AugmentKind::smote;
    AugmentInfo info{augment_kind_name(kind), s, req.seed, false, 0};
    DocTermMatrix out = matrix;
    if (s == 0) return {std::move(out), info};

    // seeds: all minority rows, or the ones outvoted by the other class
    std::vector<std::size_t> seeds = rows;
    if (cfg.borderline) {
        if (cfg.borderline_knn_k == 0)
            throw std::invalid_argument("smote_oversample: borderline_knn_k must be >= 1");
        std::vector<std::size_t> all(matrix.n_docs);
        std::iota(all.begin(), all.end(), 0);
        std::vector<std::size_t> misclassified;
        for (std::size_t r : rows) {
            auto nn = k_nearest(matrix, r, all, cfg.borderline_knn_k);
            std::size_t votes_minority = 0;
            for (std::size_t q : nn)
                if (matrix.labels[q] == minority) ++votes_minority;
            if (votes_minority * 2 < nn.size()) misclassified.push_back(r);
        }
        if (misclassified.empty())
            info.borderline_fell_back = true;
        else
            seeds = std::move(misclassified);
    }

    // neighbor pools within the minority class
    std::vector<std::vector<std::size_t>> neighbors(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i)
        neighbors[i] = k_nearest(matrix, seeds[i], rows, cfg.k_neighbors);

    Rng rng(derive_seed(req.seed, std::string_view("smote")));
    std::size_t d = matrix.n_features();
    std::vector<double> values(d);
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t pick = rng.uniform_index(seeds.size());
        std::size_t x = seeds[pick];
        const auto& pool = neighbors[pick];
        std::size_t nb = pool[rng.uniform_index(pool.size())];
        double u = rng.uniform();
        for (std::size_t j = 0; j < d; ++j) {
            double xj = matrix.at(x, j);
            values[j] = xj + u * (double(matrix.at(nb, j)) - xj);
        }
        append_row(out, values, minority);
    }
    return {std::move(out), info};
}

namespace {

struct EdaTools {
    const EdaConfig* cfg;
    const std::set<std::string>* stopwords;

    bool has_synonyms(const std::string& tok) const {
        auto it = cfg->lexicon.find(tok);
        return it != cfg->lexicon.end() && !it->second.empty();
    }
    const std::vector<std::string>& synonyms(const std::string& tok) const {
        return cfg->lexicon.at(tok);
    }
};

std::size_t eda_ops(double alpha, std::size_t length) {
    return std::max<std::size_t>(1, std::size_t(std::ceil(alpha * double(length))));
}

// Returns false when the sentence has no usable lexicon coverage.
bool eda_synonym_replace(std::vector<std::string>& tokens, const EdaTools& tools, Rng& rng) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (!tools.stopwords->count(tokens[i]) && tools.has_synonyms(tokens[i]))
            eligible.push_back(i);
    if (eligible.empty()) return false;
    std::size_t n = std::min(eda_ops(tools.cfg->alpha, tokens.size()), eligible.size());
    rng.shuffle(eligible);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& syns = tools.synonyms(tokens[eligible[i]]);
        tokens[eligible[i]] = syns[rng.uniform_index(syns.size())];
    }
    return true;
}

bool eda_random_insert(std::vector<std::string>& tokens, const EdaTools& tools, Rng& rng) {
    std::size_t n = eda_ops(tools.cfg->alpha, tokens.size());
    bool any = false;
    for (std::size_t op = 0; op < n; ++op) {
        std::vector<std::size_t> sources;
        for (std::size_t i = 0; i < tokens.size(); ++i)
            if (tools.has_synonyms(tokens[i])) sources.push_back(i);
        if (sources.empty()) break;
        const auto& syns = tools.synonyms(tokens[sources[rng.uniform_index(sources.size())]]);
        std::string syn = syns[rng.uniform_index(syns.size())];
        std::size_t pos = rng.uniform_index(tokens.size() + 1);
        tokens.insert(tokens.begin() + std::ptrdiff_t(pos), std::move(syn));
        any = true;
    }
    return any;
}

void eda_random_delete(std::vector<std::string>& tokens, const EdaTools& tools, Rng& rng) {
    std::vector<std::string> kept;
    for (auto& tok : tokens)
        if (rng.uniform() >= tools.cfg->alpha) kept.push_back(std::move(tok));
    if (kept.empty()) {
        // keep-one rule
        kept.push_back(tokens[rng.uniform_index(tokens.size())]);
    }
    tokens = std::move(kept);
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

} // namespace

std::pair<LabeledCorpus, AugmentInfo>
eda_augment(const LabeledCorpus& corpus, const EdaConfig& cfg, const AugmentRequest& req) {
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw std::invalid_argument("eda_augment: alpha must be in [0, 1]");
    for (auto& [tok, syns] : cfg.lexicon)
        if (syns.empty())
            throw std::invalid_argument("eda_augment: empty synonym list for token " + tok);

    int minority = corpus.minority_label();
    std::vector<std::size_t> minority_docs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (corpus.docs[i].label == minority && !tokenize(corpus.docs[i].text).empty())
            minority_docs.push_back(i);
    if (minority_docs.empty())
        throw std::invalid_argument("eda_augment: no non-empty minority documents");

    std::size_t s = synthetic_count_for_ratio(corpus.size(), corpus.count_label(minority),
                                              req.target_ratio);
    AugmentKind kind = cfg.variant == EdaVariant::synonym_replace ? AugmentKind::eda_sr
                       : cfg.variant == EdaVariant::random_insert ? AugmentKind::eda_ri
                                                                  : AugmentKind::eda_rd;
    AugmentInfo info{augment_kind_name(kind), s, req.seed, false, 0};

    const std::set<std::string>& stopwords =
        cfg.stopwords.empty() ? builtin_stopwords() : cfg.stopwords;
    EdaTools tools{&cfg, &stopwords};

    Rng rng(derive_seed(req.seed, std::string_view("eda")));
    LabeledCorpus out = corpus;
    out.docs.reserve(corpus.size() + s);
    for (std::size_t i = 0; i < s; ++i) {
        const auto& source = corpus.docs[minority_docs[rng.uniform_index(minority_docs.size())]];
        auto tokens = tokenize(source.text);
        bool changed = true;
        switch (cfg.variant) {
            case EdaVariant::synonym_replace:
                changed = eda_synonym_replace(tokens, tools, rng);
                break;
            case EdaVariant::random_insert:
                changed = eda_random_insert(tokens, tools, rng);
                break;
            case EdaVariant::random_delete:
                eda_random_delete(tokens, tools, rng);
                break;
        }
        if (!changed) ++info.unchanged_docs;
        out.docs.push_back({join_tokens(tokens), minority});
    }
    return {std::move(out), info};
}

IowaModel iowa_fit(const DocTermMatrix& matrix, int target_label, IowaVariant variant) {
    auto rows = label_rows(matrix, target_label);
    if (rows.empty())
        throw std::invalid_argument("iowa_fit: no rows of class " + std::to_string(target_label));
    std::vector<std::size_t> other_rows;
    for (std::size_t i = 0; i < matrix.n_docs; ++i)
        if (matrix.labels[i] != target_label) other_rows.push_back(i);

    std::size_t v = matrix.n_features();
    std::vector<double> total_k(v, 0.0), total_c(v, 0.0);
    double length_sum = 0.0;
    for (std::size_t r : rows) {
        for (std::size_t j = 0; j < v; ++j) total_k[j] += matrix.at(r, j);
        length_sum += double(matrix.row_sum(r));
    }
    for (std::size_t r : other_rows)
        for (std::size_t j = 0; j < v; ++j) total_c[j] += matrix.at(r, j);

    IowaModel model;
    model.target_label = target_label;
    model.vocab = matrix.vocab;
    model.variant = variant;
    model.lambda = length_sum / double(rows.size());
    if (model.lambda <= 0.0)
        throw std::invalid_argument("iowa_fit: class has no in-vocabulary tokens");

    std::vector<double> weights(v, 0.0);
    const char* variant_name = "";
    switch (variant) {
        case IowaVariant::frequency: {
            variant_name = "frequency";
            weights = total_k;
            break;
        }
        case IowaVariant::diff_frequency: {
            variant_name = "diff_frequency";
            if (other_rows.empty())
                throw std::invalid_argument("iowa_fit: diff_frequency needs both classes");
            for (std::size_t j = 0; j < v; ++j) {
                double d = total_k[j] / double(rows.size()) - total_c[j] / double(other_rows.size());
                weights[j] = d > 0.0 ? d : 0.0;
            }
            break;
        }
        case IowaVariant::idf: {
            variant_name = "idf";
            for (std::size_t j = 0; j < v; ++j) {
                if (total_k[j] <= 0.0) continue; // outside the class support
                double idf = std::log(double(rows.size()) / total_k[j]);
                weights[j] = idf > 0.0 ? idf : 0.0;
            }
            break;
        }
        case IowaVariant::diff_idf: {
            variant_name = "diff_idf";
            if (other_rows.empty())
                throw std::invalid_argument("iowa_fit: diff_idf needs both classes");
            for (std::size_t j = 0; j < v; ++j) {
                if (total_k[j] <= 0.0 || total_c[j] <= 0.0) continue; // both IDFs must be finite
                double d = std::log(double(rows.size()) / total_k[j]) -
                           std::log(double(other_rows.size()) / total_c[j]);
                weights[j] = d > 0.0 ? d : 0.0;
            }
            break;
        }
    }

    double delta = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (delta <= 0.0)
        throw std::invalid_argument(std::string("iowa_fit: no positive weights for variant ") +
                                    variant_name);
    for (double& w : weights) w /= delta;
    model.weights = std::move(weights);
    return model;
}

LabeledCorpus iowa_generate(const IowaModel& model, std::size_t count, std::uint64_t seed) {
    if (model.weights.size() != model.vocab.size())
        throw std::invalid_argument("iowa_generate: model weight size mismatch");
    Rng rng(derive_seed(seed, std::string_view("iowa")));
    LabeledCorpus out;
    out.name = "iowa";
    out.docs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        long len = 0;
        while (len < 1) len = rng.poisson(model.lambda);
        std::string text;
        for (long t = 0; t < len; ++t) {
            if (t) text.push_back(' ');
            text += model.vocab.token(rng.discrete(model.weights));
        }
        out.docs.push_back({std::move(text), model.target_label});
    }
    return out;
}

std::string augment_kind_name(AugmentKind kind) {
    switch (kind) {
        case AugmentKind::random_oversampling: return "random_oversampling";
        case AugmentKind::rose: return "rose";
        case AugmentKind::smote: return "smote";
        case AugmentKind::borderline_smote: return "borderline_smote";
        case AugmentKind::eda_sr: return "eda_sr";
        case AugmentKind::eda_ri: return "eda_ri";
        case AugmentKind::eda_rd: return "eda_rd";
        case AugmentKind::iowa_frequency: return "iowa_frequency";
        case AugmentKind::iowa_diff_frequency: return "iowa_diff_frequency";
        case AugmentKind::iowa_idf: return "iowa_idf";
        case AugmentKind::iowa_diff_idf: return "iowa_diff_idf";
    }
    throw std::logic_error("augment_kind_name: unknown kind");
}

AugmentKind augment_kind_from_name(const std::string& name) {
    static const std::map<std::string, AugmentKind> table = {
        {"random_oversampling", AugmentKind::random_oversampling},
        {"rose", AugmentKind::rose},
        {"smote", AugmentKind::smote},
        {"borderline_smote", AugmentKind::borderline_smote},
        {"eda_sr", AugmentKind::eda_sr},
        {"eda_ri", AugmentKind::eda_ri},
        {"eda_rd", AugmentKind::eda_rd},
        {"iowa_frequency", AugmentKind::iowa_frequency},
        {"iowa_diff_frequency", AugmentKind::iowa_diff_frequency},
        {"iowa_idf", AugmentKind::iowa_idf},
        {"iowa_diff_idf", AugmentKind::iowa_diff_idf},
    };
    auto it = table.find(name);
    if (it == table.end())
        throw std::invalid_argument("unknown augmentation method '" + name + "'");
    return it->second;
}

bool is_text_method(AugmentKind kind) {
    switch (kind) {
        case AugmentKind::rose:
        case AugmentKind::smote:
        case AugmentKind::borderline_smote:
            return false;
        default:
            return true;
    }
}

namespace {

IowaVariant iowa_variant_of(AugmentKind kind) {
    switch (kind) {
        case AugmentKind::iowa_frequency: return IowaVariant::frequency;
        case AugmentKind::iowa_diff_frequency: return IowaVariant::diff_frequency;
        case AugmentKind::iowa_idf: return IowaVariant::idf;
        case AugmentKind::iowa_diff_idf: return IowaVariant::diff_idf;
        default: throw std::logic_error("iowa_variant_of: not an iowa kind");
    }
}

} // namespace

std::pair<LabeledCorpus, AugmentInfo>
balance_corpus(const LabeledCorpus& corpus, const AugmentMethod& method, const AugmentRequest& req) {
    if (!is_text_method(method.kind))
        throw std::invalid_argument("balance_corpus: " + augment_kind_name(method.kind) +
                                    " operates on count matrices");
    int minority = corpus.minority_label();
    std::size_t n_min = corpus.count_label(minority);
    std::size_t s = synthetic_count_for_ratio(corpus.size(), n_min, req.target_ratio);

    switch (method.kind) {
        case AugmentKind::random_oversampling: {
            AugmentationPlan plan;
            plan.n = corpus.size();
            plan.m = s;
            plan.weights = minority == 1 ? std::vector<double>{0.0, 1.0}
                                         : std::vector<double>{1.0, 0.0};
            return random_oversample(corpus, plan, req.seed);
        }
        case AugmentKind::eda_sr:
        case AugmentKind::eda_ri:
        case AugmentKind::eda_rd: {
            EdaConfig cfg = method.eda;
            cfg.variant = method.kind == AugmentKind::eda_sr   ? EdaVariant::synonym_replace
                          : method.kind == AugmentKind::eda_ri ? EdaVariant::random_insert
                                                               : EdaVariant::random_delete;
            return eda_augment(corpus, cfg, req);
        }
        default: { // iowa variants
            Vocabulary vocab = fit_vocabulary(corpus, 1);
            DocTermMatrix matrix = transform(corpus, vocab);
            IowaModel model = iowa_fit(matrix, minority, iowa_variant_of(method.kind));
            LabeledCorpus generated = iowa_generate(model, s, req.seed);
            LabeledCorpus out = corpus;
            out.docs.insert(out.docs.end(), generated.docs.begin(), generated.docs.end());
            AugmentInfo info{augment_kind_name(method.kind), s, req.seed, false, 0};
            return {std::move(out), info};
        }
    }
}

std::pair<DocTermMatrix, AugmentInfo>
balance_matrix(const DocTermMatrix& matrix, const AugmentMethod& method, const AugmentRequest& req) {
    switch (method.kind) {
        case AugmentKind::rose:
            return rose_oversample(matrix, method.rose, req);
        case AugmentKind::smote: {
            SmoteConfig cfg = method.smote;
            cfg.borderline = false;
            return smote_oversample(matrix, cfg, req);
        }
        case AugmentKind::borderline_smote: {
            SmoteConfig cfg = method.smote;
            cfg.borderline = true;
            return smote_oversample(matrix, cfg, req);
        }
        default:
            throw std::invalid_argument("balance_matrix: " + augment_kind_name(method.kind) +
                                        " operates on text corpora");
    }
}

} // namespace imbtext
