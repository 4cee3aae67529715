/* mailmine — forensic email-mining toolkit, C API.
 *
 * Every function returns a status code; results come back through out
 * parameters. Strings returned through char** are heap-allocated and must be
 * released with mm_string_free. Handles are opaque and must be released with
 * their matching *_free call. On failure, mm_last_error() returns a
 * thread-local description of what went wrong.
 */
#ifndef MAILMINE_H
#define MAILMINE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mm_status {
    MM_OK = 0,
    MM_ERR_INPUT = 2,   /* bad paths, malformed files, invalid options */
    MM_ERR_INTERNAL = 3 /* broken invariant inside the library */
} mm_status;

typedef struct mm_corpus mm_corpus;
typedef struct mm_model mm_model;

const char* mm_version(void);

/* Thread-local message for the most recent failure on this thread. The
 * pointer stays valid until the next failing call on the same thread. */
const char* mm_last_error(void);

void mm_string_free(char* s);

/* ----------------------------------------------------------- corpus ---- */

/* options_json (may be NULL): {"aliases": path, "label_column": name,
 * "poi_column": name} */
mm_status mm_corpus_open(const char* csv_path, const char* options_json, mm_corpus** out);
mm_status mm_corpus_open_text(const char* csv_text, const char* options_json, mm_corpus** out);
void mm_corpus_free(mm_corpus* corpus);

int64_t mm_corpus_doc_count(const mm_corpus* corpus);

/* Parse report plus corpus statistics as a JSON object. */
mm_status mm_corpus_summary_json(const mm_corpus* corpus, char** json_out);

/* -------------------------------------------------------------- pii ---- */

/* options_json: {"dl_table": path, "include_email_ip": bool, "jobs": n} */
mm_status mm_pii_report_json(const mm_corpus* corpus, const char* options_json,
                             char** json_out);
/* adds {"no_echo": bool}; one finding per line */
mm_status mm_pii_findings_jsonl(const mm_corpus* corpus, const char* options_json,
                                char** jsonl_out);

/* -------------------------------------------------------- sentiment ---- */

/* options_json: {"valence": path, "emotions": path, "deceit": path,
 * "bucket": "month"|"week", "cluster_top": n, "jobs": n} */
mm_status mm_sentiment_report_json(const mm_corpus* corpus, const char* options_json,
                                   char** json_out);

/* ---------------------------------------------------------- benford ---- */

/* series: "body_length" or "daily_count" */
mm_status mm_benford_corpus_json(const mm_corpus* corpus, const char* series,
                                 char** json_out);
mm_status mm_benford_values_json(const double* values, size_t n, char** json_out);
/* whitespace-separated numbers */
mm_status mm_benford_file_json(const char* path, char** json_out);

/* ----------------------------------------------------------- models ---- */

/* options_json keys shared by both trainers: sampler (none|under|over),
 * algo (cart|forest|knn), test_fraction, cv_folds, seed, jobs, min_split,
 * min_leaf, max_depth, cp, trees, mtry, k. train_responsive adds
 * max_sparsity, tfidf, stopwords; train_poi adds mode
 * (financial_only|combined|email_only), blank_fill (zero|median|mean) and
 * the sentiment lexicon paths. */
mm_status mm_train_responsive(const mm_corpus* corpus, const char* options_json,
                              mm_model** out);
mm_status mm_train_poi(const char* financial_csv_path, const mm_corpus* corpus_or_null,
                       const char* options_json, mm_model** out);

/* fig4_responsive, fig6_poi, bonus_single_split */
mm_status mm_model_builtin(const char* name, mm_model** out);

mm_status mm_model_load(const char* path, mm_model** out);
mm_status mm_model_save(const mm_model* model, const char* path);
void mm_model_free(mm_model* model);

/* Metrics captured at training time (empty object for builtins). */
mm_status mm_model_metrics_json(const mm_model* model, char** json_out);
/* Figure-style numbered business rules (trees and rule sets only). */
mm_status mm_model_rules_text(const mm_model* model, char** text_out);

/* --------------------------------------------------------- classify ---- */

/* Per-document labels as JSON lines plus aggregate counts. Either out
 * pointer may be NULL. */
mm_status mm_classify_corpus(const mm_model* model, const mm_corpus* corpus,
                             char** jsonl_out, char** aggregate_json_out);
/* Tabular rows (person + numeric columns); a poi column adds metrics to the
 * aggregate. */
mm_status mm_classify_table(const mm_model* model, const char* feature_csv_path,
                            char** jsonl_out, char** aggregate_json_out);

/* ---------------------------------------------------- poi features ----- */

/* Joined person-of-interest dataset; options_json may name a builtin
 * "ruleset" to evaluate against the labels. */
mm_status mm_poi_dataset_json(const char* financial_csv_path,
                              const mm_corpus* corpus_or_null, const char* options_json,
                              char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MAILMINE_H */
