#include "imbtext/vectorize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "imbtext/csv.hpp"

namespace imbtext {

namespace {

inline bool is_word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c >= 0x80;
}

inline char lower_ascii(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : char(c);
}

} // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            current.push_back(lower_ascii(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        auto [it, inserted] = index_.emplace(tokens_[i], i);
        if (!inserted) throw std::invalid_argument("Vocabulary: duplicate token " + tokens_[i]);
    }
}

std::size_t Vocabulary::lookup(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? npos : it->second;
}

std::size_t DocTermMatrix::row_sum(std::size_t doc) const {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < vocab.size(); ++j) sum += at(doc, j);
    return sum;
}

std::size_t DocTermMatrix::count_label(int label) const {
    return std::size_t(std::count(labels.begin(), labels.end(), label));
}

Vocabulary fit_vocabulary(const LabeledCorpus& corpus, std::size_t min_count) {
    if (corpus.docs.empty()) throw std::invalid_argument("fit_vocabulary: empty corpus");
    // std::map keeps tokens lexicographically ordered
    std::map<std::string, std::size_t> totals;
    for (const auto& doc : corpus.docs)
        for (auto& tok : tokenize(doc.text)) ++totals[tok];

    std::vector<std::string> kept;
    for (auto& [tok, count] : totals)
        if (count >= min_count) kept.push_back(tok);
    if (kept.empty())
        throw std::invalid_argument("fit_vocabulary: no token reaches min_count=" +
                                    std::to_string(min_count));
    return Vocabulary(std::move(kept));
}

DocTermMatrix transform(const LabeledCorpus& corpus, const Vocabulary& vocab) {
    DocTermMatrix m;
    m.n_docs = corpus.size();
    m.vocab = vocab;
    m.counts.assign(m.n_docs * vocab.size(), 0);
    m.labels.reserve(m.n_docs);
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        m.labels.push_back(corpus.docs[d].label);
        for (auto& tok : tokenize(corpus.docs[d].text)) {
            std::size_t j = vocab.lookup(tok);
            if (j != Vocabulary::npos) ++m.at(d, j);
        }
    }
    return m;
}

void write_triplets(const DocTermMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_triplets: cannot open " + path.string());
    write_csv_row(out, {"row", "col", "count"});
    for (std::size_t d = 0; d < matrix.n_docs; ++d)
        for (std::size_t j = 0; j < matrix.n_features(); ++j)
            if (matrix.at(d, j))
                write_csv_row(out, {std::to_string(d), std::to_string(j),
                                    std::to_string(matrix.at(d, j))});
}

} // namespace imbtext
