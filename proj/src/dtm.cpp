#include "mailmine/dtm.hpp"

#include "mailmine/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mailmine {

int Vocabulary::find(const std::string& term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it == terms.end() || *it != term) return -1;
    return static_cast<int>(it - terms.begin());
}

double DocTermMatrix::cell(size_t doc, int32_t term) const {
    const auto& r = rows[doc];
    auto it = std::lower_bound(r.begin(), r.end(), term,
                               [](const auto& cell, int32_t t) { return cell.first < t; });
    if (it == r.end() || it->first != term) return 0.0;
    return it->second;
}

double DocTermMatrix::row_sum(size_t doc) const {
    double sum = 0.0;
    for (const auto& [t, v] : rows[doc]) sum += v;
    return sum;
}

DocTermMatrix build_dtm(const std::vector<TokenStream>& docs,
                        const std::vector<std::string>& doc_ids) {
    if (docs.empty()) throw InputError("build_dtm: no documents");

    // term -> (doc freq, global index later); std::map keeps terms sorted
    std::map<std::string, int64_t> doc_freq;
    std::vector<std::map<std::string, int64_t>> counts(docs.size());
    for (size_t d = 0; d < docs.size(); ++d) {
        for (const auto& tok : docs[d]) counts[d][tok]++;
        for (const auto& [term, n] : counts[d]) doc_freq[term]++;
    }

    DocTermMatrix dtm;
    dtm.vocab.n_docs = static_cast<int64_t>(docs.size());
    dtm.vocab.terms.reserve(doc_freq.size());
    dtm.vocab.doc_freq.reserve(doc_freq.size());
    for (const auto& [term, df] : doc_freq) {
        dtm.vocab.terms.push_back(term);
        dtm.vocab.doc_freq.push_back(df);
    }

    dtm.doc_ids.resize(docs.size());
    for (size_t d = 0; d < docs.size(); ++d)
        dtm.doc_ids[d] = d < doc_ids.size() ? doc_ids[d] : "doc-" + std::to_string(d);

    dtm.rows.resize(docs.size());
    for (size_t d = 0; d < docs.size(); ++d) {
        dtm.rows[d].reserve(counts[d].size());
        for (const auto& [term, n] : counts[d])
            dtm.rows[d].emplace_back(dtm.vocab.find(term), static_cast<double>(n));
        // map iteration is sorted by term, which matches vocab order
    }
    return dtm;
}

DocTermMatrix tfidf(const DocTermMatrix& dtm) {
    if (dtm.weighting != Weighting::RawCount)
        throw InputError("tfidf: input must be raw counts");
    DocTermMatrix out;
    out.vocab = dtm.vocab;
    out.doc_ids = dtm.doc_ids;
    out.weighting = Weighting::TfIdf;
    out.rows.resize(dtm.rows.size());
    const double n = static_cast<double>(dtm.vocab.n_docs);
    for (size_t d = 0; d < dtm.rows.size(); ++d) {
        for (const auto& [t, tf] : dtm.rows[d]) {
            int64_t df = dtm.vocab.doc_freq[static_cast<size_t>(t)];
            if (df == dtm.vocab.n_docs) continue; // idf = 0, cell dropped
            double w = tf * std::log2(n / static_cast<double>(df));
            out.rows[d].emplace_back(t, w);
        }
    }
    return out;
}

DocTermMatrix prune_sparse(const DocTermMatrix& dtm, double max_sparsity) {
    if (!(max_sparsity > 0.0 && max_sparsity < 1.0))
        throw InputError("prune_sparse: max_sparsity must be in (0, 1)");
    const double min_share = 1.0 - max_sparsity;
    const double n = static_cast<double>(dtm.vocab.n_docs);

    std::vector<int32_t> remap(dtm.vocab.terms.size(), -1);
    DocTermMatrix out;
    out.weighting = dtm.weighting;
    out.doc_ids = dtm.doc_ids;
    out.vocab.n_docs = dtm.vocab.n_docs;
    for (size_t t = 0; t < dtm.vocab.terms.size(); ++t) {
        if (static_cast<double>(dtm.vocab.doc_freq[t]) / n > min_share) {
            remap[t] = static_cast<int32_t>(out.vocab.terms.size());
            out.vocab.terms.push_back(dtm.vocab.terms[t]);
            out.vocab.doc_freq.push_back(dtm.vocab.doc_freq[t]);
        }
    }
    if (out.vocab.terms.empty())
        throw InputError("prune_sparse: no terms survive at max_sparsity " +
                         std::to_string(max_sparsity));

    out.rows.resize(dtm.rows.size());
    for (size_t d = 0; d < dtm.rows.size(); ++d)
        for (const auto& [t, v] : dtm.rows[d])
            if (remap[static_cast<size_t>(t)] >= 0)
                out.rows[d].emplace_back(remap[static_cast<size_t>(t)], v);
    return out;
}

std::string export_json(const DocTermMatrix& dtm) {
    nlohmann::json j;
    j["vocab"] = dtm.vocab.terms;
    j["doc_ids"] = dtm.doc_ids;
    j["weighting"] = dtm.weighting == Weighting::TfIdf ? "tfidf" : "raw_count";
    nlohmann::json triplets = nlohmann::json::array();
    for (size_t d = 0; d < dtm.rows.size(); ++d)
        for (const auto& [t, v] : dtm.rows[d])
            triplets.push_back({d, t, v});
    j["triplets"] = triplets;
    return j.dump(2);
}

std::vector<double> project(const Vocabulary& vocab, const TokenStream& tokens,
                            bool reweight_tfidf) {
    std::vector<double> features(vocab.terms.size(), 0.0);
    for (const auto& tok : tokens) {
        int idx = vocab.find(tok);
        if (idx >= 0) features[static_cast<size_t>(idx)] += 1.0;
    }
    if (reweight_tfidf) {
        const double n = static_cast<double>(vocab.n_docs);
        for (size_t t = 0; t < features.size(); ++t) {
            if (features[t] == 0.0) continue;
            double df = static_cast<double>(vocab.doc_freq[t]);
            features[t] *= std::log2(n / df);
        }
    }
    return features;
}

} // namespace mailmine
