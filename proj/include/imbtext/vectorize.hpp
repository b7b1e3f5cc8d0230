#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "imbtext/corpus.hpp"

namespace imbtext {

// Lowercased tokens split on maximal runs of non-alphanumeric characters.
// ASCII letters are lowercased; bytes >= 0x80 are kept as word characters so
// multi-byte UTF-8 sequences stay inside one token.
std::vector<std::string> tokenize(const std::string& text);

class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::string& token(std::size_t i) const { return tokens_[i]; }
    // Position of a token, or npos when out of vocabulary.
    std::size_t lookup(const std::string& token) const;

    static constexpr std::size_t npos = std::size_t(-1);

    bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Dense bag-of-words counts, one row per document.
struct DocTermMatrix {
    std::size_t n_docs = 0;
    Vocabulary vocab;
    std::vector<std::uint32_t> counts; // row-major n_docs x vocab.size()
    std::vector<int> labels;

    std::size_t n_features() const { return vocab.size(); }
    std::uint32_t at(std::size_t doc, std::size_t term) const {
        return counts[doc * vocab.size() + term];
    }
    std::uint32_t& at(std::size_t doc, std::size_t term) {
        return counts[doc * vocab.size() + term];
    }
    std::size_t row_sum(std::size_t doc) const;
    std::size_t count_label(int label) const;
};

// Tokens whose total corpus count reaches min_count, ordered lexicographically.
// Throws if the corpus is empty or no token survives the cutoff.
Vocabulary fit_vocabulary(const LabeledCorpus& corpus, std::size_t min_count = 1);

// Counts of in-vocabulary tokens per document; out-of-vocabulary tokens dropped.
DocTermMatrix transform(const LabeledCorpus& corpus, const Vocabulary& vocab);

// Sparse (row, col, count) CSV dump for debugging.
void write_triplets(const DocTermMatrix& matrix, const std::filesystem::path& path);

} // namespace imbtext
