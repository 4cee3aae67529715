#pragma once

#include "mailmine/textpipe.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mailmine {

enum class Weighting { RawCount, TfIdf };

struct Vocabulary {
    std::vector<std::string> terms;   // unique, sorted
    std::vector<int64_t> doc_freq;    // per term, 1..n_docs
    int64_t n_docs = 0;

    int find(const std::string& term) const; // -1 when absent
};

// Sparse documents-by-terms matrix. Rows keep only nonzero cells as sorted
// (term index, value) pairs.
struct DocTermMatrix {
    Vocabulary vocab;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<std::pair<int32_t, double>>> rows;
    Weighting weighting = Weighting::RawCount;

    double cell(size_t doc, int32_t term) const;
    double row_sum(size_t doc) const;
};

// Raw term counts. Empty documents keep their (empty) row.
DocTermMatrix build_dtm(const std::vector<TokenStream>& docs,
                        const std::vector<std::string>& doc_ids = {});

// weight(d, t) = tf(d, t) * log2(n_docs / doc_freq(t)). Terms present in
// every document weigh zero and their cells are dropped.
DocTermMatrix tfidf(const DocTermMatrix& dtm);

// Keeps term t iff doc_freq(t) / n_docs > 1 - max_sparsity. Vocabulary order
// is preserved. Throws when nothing survives.
DocTermMatrix prune_sparse(const DocTermMatrix& dtm, double max_sparsity);

// Projects a token stream onto a fixed vocabulary: raw counts, out-of-vocab
// tokens ignored. With reweight, applies the training idf to the counts.
std::vector<double> project(const Vocabulary& vocab, const TokenStream& tokens,
                            bool reweight_tfidf = false);

// {"vocab": [...], "doc_ids": [...], "triplets": [[doc, term, value]...],
//  "weighting": "raw_count"|"tfidf"} — serialized, key-sorted.
std::string export_json(const DocTermMatrix& dtm);

} // namespace mailmine
