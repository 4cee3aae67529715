#pragma once

#include "mailmine/corpus.hpp"
#include "mailmine/model.hpp"
#include "mailmine/pii.hpp"

#include "json.hpp"

#include <string>

// High-level batch operations, one per CLI subcommand. Options arrive as a
// JSON object (the C API passes them through verbatim); unknown keys are
// ignored so callers can share option blobs across commands.
namespace mailmine::session {

using nlohmann::json;

// options: aliases (path), label_column, poi_column
Corpus open_corpus_file(const std::string& path, const json& options);
Corpus open_corpus_text(const std::string& csv_text, const json& options);

json corpus_summary(const Corpus& corpus);

// options: dl_table (path), include_email_ip (bool), jobs
json pii_report(const Corpus& corpus, const json& options);
// options: as above plus no_echo (bool)
std::string pii_findings_jsonl(const Corpus& corpus, const json& options);

// options: valence (path, required), emotions (path, required),
// deceit (path), bucket ("month"|"week"), cluster_top (int), jobs
json sentiment_report(const Corpus& corpus, const json& options);

// series: body_length | daily_count
json benford_corpus(const Corpus& corpus, const std::string& series);
json benford_values(const std::vector<double>& values);
std::vector<double> read_values_file(const std::string& path);

// options: sampler (none|under|over), algo (cart|forest|knn),
// test_fraction, max_sparsity, tfidf, cv_folds, seed, jobs,
// min_split, min_leaf, max_depth, cp, trees, mtry, k
Model train_responsive(const Corpus& corpus, const json& options);

// options: as above plus mode (financial_only|combined|email_only),
// valence/emotions/deceit lexicon paths when email features are wanted
Model train_poi(const std::string& financial_csv_path, const Corpus* corpus,
                const json& options);

Model builtin_model(const std::string& name);

// Per-doc labels as JSON lines; aggregate counts returned via out-param.
std::string classify_corpus_jsonl(const Model& model, const Corpus& corpus, json* aggregate);
// Tabular variant over a feature CSV (person + numeric columns; an optional
// poi column adds evaluation metrics to the aggregate).
std::string classify_table_jsonl(const Model& model, const std::string& feature_csv_path,
                                 json* aggregate);

// options: mode, ruleset (name), lexicon paths; returns the joined dataset
// and, when a ruleset is named, its confusion metrics against the labels.
json poi_dataset(const std::string& financial_csv_path, const Corpus* corpus,
                 const json& options);

} // namespace mailmine::session
