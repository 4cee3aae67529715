#include "mailmine.h"

#include "mailmine/corpus.hpp"
#include "mailmine/errors.hpp"
#include "mailmine/model.hpp"
#include "mailmine/session.hpp"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

using mailmine::Corpus;
using mailmine::Model;
using nlohmann::json;

struct mm_corpus {
    Corpus corpus;
};

struct mm_model {
    Model model;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json parse_options(const char* options_json) {
    if (options_json == nullptr || *options_json == '\0') return json::object();
    json j = json::parse(options_json, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw mailmine::InputError("options must be a JSON object");
    return j;
}

// Exceptions stop at the ABI boundary and turn into status codes.
template <typename Fn>
mm_status guard(Fn&& fn) {
    try {
        fn();
        return MM_OK;
    } catch (const mailmine::InputError& e) {
        t_last_error = e.what();
        return MM_ERR_INPUT;
    } catch (const json::exception& e) {
        t_last_error = e.what();
        return MM_ERR_INPUT;
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return MM_ERR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return MM_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return MM_ERR_INTERNAL;
    }
}

mm_status require(bool ok, const char* what) {
    if (ok) return MM_OK;
    t_last_error = std::string("null argument: ") + what;
    return MM_ERR_INPUT;
}

} // namespace

extern "C" {

const char* mm_version(void) { return "0.1.0"; }

const char* mm_last_error(void) { return t_last_error.c_str(); }

void mm_string_free(char* s) { delete[] s; }

mm_status mm_corpus_open(const char* csv_path, const char* options_json, mm_corpus** out) {
    if (auto rc = require(csv_path && out, "csv_path/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_corpus>();
        handle->corpus =
            mailmine::session::open_corpus_file(csv_path, parse_options(options_json));
        *out = handle.release();
    });
}

mm_status mm_corpus_open_text(const char* csv_text, const char* options_json,
                              mm_corpus** out) {
    if (auto rc = require(csv_text && out, "csv_text/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_corpus>();
        handle->corpus =
            mailmine::session::open_corpus_text(csv_text, parse_options(options_json));
        *out = handle.release();
    });
}

void mm_corpus_free(mm_corpus* corpus) { delete corpus; }

int64_t mm_corpus_doc_count(const mm_corpus* corpus) {
    return corpus ? static_cast<int64_t>(corpus->corpus.docs.size()) : -1;
}

mm_status mm_corpus_summary_json(const mm_corpus* corpus, char** json_out) {
    if (auto rc = require(corpus && json_out, "corpus/json_out")) return rc;
    return guard([&] {
        *json_out = dup_string(mailmine::session::corpus_summary(corpus->corpus).dump(2));
    });
}

mm_status mm_pii_report_json(const mm_corpus* corpus, const char* options_json,
                             char** json_out) {
    if (auto rc = require(corpus && json_out, "corpus/json_out")) return rc;
    return guard([&] {
        *json_out = dup_string(
            mailmine::session::pii_report(corpus->corpus, parse_options(options_json)).dump(2));
    });
}

mm_status mm_pii_findings_jsonl(const mm_corpus* corpus, const char* options_json,
                                char** jsonl_out) {
    if (auto rc = require(corpus && jsonl_out, "corpus/jsonl_out")) return rc;
    return guard([&] {
        *jsonl_out = dup_string(
            mailmine::session::pii_findings_jsonl(corpus->corpus, parse_options(options_json)));
    });
}

mm_status mm_sentiment_report_json(const mm_corpus* corpus, const char* options_json,
                                   char** json_out) {
    if (auto rc = require(corpus && json_out, "corpus/json_out")) return rc;
    return guard([&] {
        *json_out = dup_string(
            mailmine::session::sentiment_report(corpus->corpus, parse_options(options_json))
                .dump(2));
    });
}

mm_status mm_benford_corpus_json(const mm_corpus* corpus, const char* series,
                                 char** json_out) {
    if (auto rc = require(corpus && series && json_out, "corpus/series/json_out")) return rc;
    return guard([&] {
        *json_out =
            dup_string(mailmine::session::benford_corpus(corpus->corpus, series).dump(2));
    });
}

mm_status mm_benford_values_json(const double* values, size_t n, char** json_out) {
    if (auto rc = require((values || n == 0) && json_out, "values/json_out")) return rc;
    return guard([&] {
        std::vector<double> v(values, values + n);
        *json_out = dup_string(mailmine::session::benford_values(v).dump(2));
    });
}

mm_status mm_benford_file_json(const char* path, char** json_out) {
    if (auto rc = require(path && json_out, "path/json_out")) return rc;
    return guard([&] {
        auto values = mailmine::session::read_values_file(path);
        *json_out = dup_string(mailmine::session::benford_values(values).dump(2));
    });
}

mm_status mm_train_responsive(const mm_corpus* corpus, const char* options_json,
                              mm_model** out) {
    if (auto rc = require(corpus && out, "corpus/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_model>();
        handle->model =
            mailmine::session::train_responsive(corpus->corpus, parse_options(options_json));
        *out = handle.release();
    });
}

mm_status mm_train_poi(const char* financial_csv_path, const mm_corpus* corpus_or_null,
                       const char* options_json, mm_model** out) {
    if (auto rc = require(financial_csv_path && out, "financial_csv_path/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_model>();
        handle->model = mailmine::session::train_poi(
            financial_csv_path, corpus_or_null ? &corpus_or_null->corpus : nullptr,
            parse_options(options_json));
        *out = handle.release();
    });
}

mm_status mm_model_builtin(const char* name, mm_model** out) {
    if (auto rc = require(name && out, "name/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_model>();
        handle->model = mailmine::session::builtin_model(name);
        *out = handle.release();
    });
}

mm_status mm_model_load(const char* path, mm_model** out) {
    if (auto rc = require(path && out, "path/out")) return rc;
    return guard([&] {
        auto handle = std::make_unique<mm_model>();
        handle->model = mailmine::load_model(path);
        *out = handle.release();
    });
}

mm_status mm_model_save(const mm_model* model, const char* path) {
    if (auto rc = require(model && path, "model/path")) return rc;
    return guard([&] { mailmine::save_model(model->model, path); });
}

void mm_model_free(mm_model* model) { delete model; }

mm_status mm_model_metrics_json(const mm_model* model, char** json_out) {
    if (auto rc = require(model && json_out, "model/json_out")) return rc;
    return guard([&] { *json_out = dup_string(model->model.metrics.dump(2)); });
}

mm_status mm_model_rules_text(const mm_model* model, char** text_out) {
    if (auto rc = require(model && text_out, "model/text_out")) return rc;
    return guard([&] {
        *text_out = dup_string(mailmine::render_ruleset(model->model.rules()));
    });
}

mm_status mm_classify_corpus(const mm_model* model, const mm_corpus* corpus, char** jsonl_out,
                             char** aggregate_json_out) {
    if (auto rc = require(model && corpus, "model/corpus")) return rc;
    return guard([&] {
        json aggregate;
        std::string lines =
            mailmine::session::classify_corpus_jsonl(model->model, corpus->corpus, &aggregate);
        if (jsonl_out) *jsonl_out = dup_string(lines);
        if (aggregate_json_out) *aggregate_json_out = dup_string(aggregate.dump(2));
    });
}

mm_status mm_classify_table(const mm_model* model, const char* feature_csv_path,
                            char** jsonl_out, char** aggregate_json_out) {
    if (auto rc = require(model && feature_csv_path, "model/feature_csv_path")) return rc;
    return guard([&] {
        json aggregate;
        std::string lines = mailmine::session::classify_table_jsonl(
            model->model, feature_csv_path, &aggregate);
        if (jsonl_out) *jsonl_out = dup_string(lines);
        if (aggregate_json_out) *aggregate_json_out = dup_string(aggregate.dump(2));
    });
}

mm_status mm_poi_dataset_json(const char* financial_csv_path, const mm_corpus* corpus_or_null,
                              const char* options_json, char** json_out) {
    if (auto rc = require(financial_csv_path && json_out, "financial_csv_path/json_out")) return rc;
    return guard([&] {
        *json_out = dup_string(
            mailmine::session::poi_dataset(
                financial_csv_path, corpus_or_null ? &corpus_or_null->corpus : nullptr,
                parse_options(options_json))
                .dump(2));
    });
}

} // extern "C"
