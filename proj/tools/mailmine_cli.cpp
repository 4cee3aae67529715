// mailmine batch CLI. Talks to the library exclusively through the C API in
// mailmine.h; machine-readable JSON goes to stdout (or --out), human
// summaries to stderr. Exit codes: 0 ok, 2 input error, 3 internal error.

#include "mailmine.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

using nlohmann::json;

namespace {

struct StringOut {
    char* value = nullptr;
    ~StringOut() { mm_string_free(value); }
    char** slot() { return &value; }
    std::string str() const { return value ? std::string(value) : std::string(); }
};

struct CorpusHandle {
    mm_corpus* ptr = nullptr;
    ~CorpusHandle() { mm_corpus_free(ptr); }
};

struct ModelHandle {
    mm_model* ptr = nullptr;
    ~ModelHandle() { mm_model_free(ptr); }
};

[[noreturn]] void fail(mm_status rc) {
    std::cerr << "error: " << mm_last_error() << "\n";
    std::exit(rc == MM_OK ? 3 : static_cast<int>(rc));
}

void check(mm_status rc) {
    if (rc != MM_OK) fail(rc);
}

struct GlobalOpts {
    uint64_t seed = 42;
    unsigned jobs = 0; // 0 = library default (available cores)
    std::string out_path;
    std::string format = "json";
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--seed", g.seed, "Random seed (default 42)");
    cmd->add_option("--jobs", g.jobs, "Worker threads (default: available cores)");
    cmd->add_option("--out", g.out_path, "Write the JSON report here instead of stdout");
    cmd->add_option("--format", g.format, "Output format (json)")
        ->check(CLI::IsMember({"json"}));
}

void apply_globals(json& options, const GlobalOpts& g) {
    options["seed"] = g.seed;
    if (g.jobs > 0) options["jobs"] = g.jobs;
}

void write_output(const std::string& payload, const GlobalOpts& g) {
    if (g.out_path.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << g.out_path << "'\n";
        std::exit(2);
    }
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << "\n";
}

void write_file_or_stdout(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        std::exit(2);
    }
    out << payload;
}

mm_corpus* open_corpus(const std::string& path, const json& options) {
    CorpusHandle tmp;
    check(mm_corpus_open(path.c_str(), options.dump().c_str(), &tmp.ptr));
    mm_corpus* ptr = tmp.ptr;
    tmp.ptr = nullptr;
    return ptr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mailmine — forensic email mining toolkit"};
    app.require_subcommand(1);

    // ---------------------------------------------------------- ingest ----
    auto* ingest = app.add_subcommand("ingest", "Parse a corpus CSV and report statistics");
    GlobalOpts g_ingest;
    std::string ingest_corpus, ingest_aliases, ingest_label = "responsive";
    ingest->add_option("--corpus", ingest_corpus, "Corpus CSV path")->required();
    ingest->add_option("--aliases", ingest_aliases, "Alias roster CSV");
    ingest->add_option("--label-column", ingest_label, "Relevance label column name");
    add_globals(ingest, g_ingest);

    // ------------------------------------------------------------- pii ----
    auto* pii = app.add_subcommand("pii", "Scan for personally identifiable information");
    GlobalOpts g_pii;
    std::string pii_corpus, pii_dl_table, pii_findings;
    bool pii_no_echo = false, pii_email_ip = false;
    pii->add_option("--corpus", pii_corpus, "Corpus CSV path")->required();
    pii->add_option("--dl-table", pii_dl_table, "Driver's-license format CSV");
    pii->add_option("--findings", pii_findings, "Write findings JSONL here ('-' = stdout)");
    pii->add_flag("--no-echo", pii_no_echo, "Suppress matched text in findings");
    pii->add_flag("--include-email-ip", pii_email_ip, "Also detect email and IP addresses");
    add_globals(pii, g_pii);

    // ----------------------------------------------------------- train ----
    auto* train = app.add_subcommand("train", "Train a classifier");
    GlobalOpts g_train;
    std::string train_target, train_corpus, train_financial, train_model_out;
    std::string train_sampler = "none", train_algo = "cart", train_mode = "combined";
    std::string train_label = "responsive", train_stopwords, train_valence, train_emotions,
        train_deceit;
    double train_test_fraction = 0.3, train_sparsity = 0.97, train_cp = 0.01;
    bool train_tfidf = false;
    int train_cv = 3, train_min_split = 20, train_min_leaf = 7, train_max_depth = 30;
    int train_trees = 100, train_mtry = 0, train_k = 5;
    train->add_option("--target", train_target, "responsive or poi")
        ->required()
        ->check(CLI::IsMember({"responsive", "poi"}));
    train->add_option("--corpus", train_corpus, "Corpus CSV (responsive target, poi email mode)");
    train->add_option("--financial", train_financial, "Insider-pay CSV (poi target)");
    train->add_option("--model", train_model_out, "Write the trained model here")->required();
    train->add_option("--sampler", train_sampler, "none, under or over")
        ->check(CLI::IsMember({"none", "under", "over"}));
    train->add_option("--algo", train_algo, "cart, forest or knn")
        ->check(CLI::IsMember({"cart", "forest", "knn"}));
    train->add_option("--mode", train_mode, "poi features: financial_only, combined, email_only")
        ->check(CLI::IsMember({"financial_only", "combined", "email_only"}));
    train->add_option("--label-column", train_label, "Relevance label column name");
    train->add_option("--stopwords", train_stopwords, "Stopword file (default: built-in list)");
    train->add_option("--valence", train_valence, "Valence lexicon TSV (poi email features)");
    train->add_option("--emotions", train_emotions, "Emotion lexicon TSV (poi email features)");
    train->add_option("--deceit", train_deceit, "Deception term list (poi email features)");
    train->add_option("--test-fraction", train_test_fraction, "Held-out fraction (default 0.3)");
    train->add_option("--max-sparsity", train_sparsity, "Term sparsity cutoff (default 0.97)");
    train->add_flag("--tfidf", train_tfidf, "Weight the term matrix with TF-IDF");
    train->add_option("--cv", train_cv, "Cross-validation folds (default 3)");
    train->add_option("--min-split", train_min_split, "CART: smallest splittable node");
    train->add_option("--min-leaf", train_min_leaf, "CART: smallest leaf");
    train->add_option("--max-depth", train_max_depth, "CART: depth limit");
    train->add_option("--cp", train_cp, "CART: complexity penalty");
    train->add_option("--trees", train_trees, "Forest: number of trees");
    train->add_option("--mtry", train_mtry, "Forest: features per split (0 = sqrt)");
    train->add_option("-k", train_k, "kNN: neighbourhood size");
    add_globals(train, g_train);

    // -------------------------------------------------------- classify ----
    auto* classify = app.add_subcommand("classify", "Score a corpus or feature table");
    GlobalOpts g_classify;
    std::string cls_model, cls_ruleset, cls_corpus, cls_features, cls_labels;
    std::string cls_label_column = "responsive";
    classify->add_option("--model", cls_model, "Trained model file");
    classify->add_option("--ruleset", cls_ruleset,
                         "Builtin ruleset: fig4_responsive, fig6_poi, bonus_single_split");
    classify->add_option("--corpus", cls_corpus, "Corpus CSV to score");
    classify->add_option("--features", cls_features, "Feature CSV to score (person rows)");
    classify->add_option("--labels", cls_labels, "Write per-item labels JSONL here ('-' = stdout)");
    classify->add_option("--label-column", cls_label_column, "Corpus label column name");
    add_globals(classify, g_classify);

    // ----------------------------------------------------------- rules ----
    auto* rules = app.add_subcommand("rules", "Print a model as numbered business rules");
    GlobalOpts g_rules;
    std::string rules_model, rules_ruleset;
    rules->add_option("--model", rules_model, "Trained model file");
    rules->add_option("--ruleset", rules_ruleset, "Builtin ruleset name");
    add_globals(rules, g_rules);

    // ------------------------------------------------------- sentiment ----
    auto* sentiment = app.add_subcommand("sentiment", "Emotion and valence analytics");
    GlobalOpts g_sent;
    std::string sent_corpus, sent_valence, sent_emotions, sent_deceit, sent_bucket = "month";
    unsigned sent_cluster_top = 40;
    sentiment->add_option("--corpus", sent_corpus, "Corpus CSV path")->required();
    sentiment->add_option("--valence", sent_valence, "Valence lexicon TSV")->required();
    sentiment->add_option("--emotions", sent_emotions, "Emotion lexicon TSV")->required();
    sentiment->add_option("--deceit", sent_deceit, "Deception term list");
    sentiment->add_option("--bucket", sent_bucket, "Timeline bucket: month or week")
        ->check(CLI::IsMember({"month", "week"}));
    sentiment->add_option("--cluster-top", sent_cluster_top,
                          "Cluster this many highest-volume senders (default 40)");
    add_globals(sentiment, g_sent);

    // ------------------------------------------------------------- poi ----
    auto* poi = app.add_subcommand("poi", "Build the person-of-interest feature table");
    GlobalOpts g_poi;
    std::string poi_financial, poi_corpus, poi_mode = "financial_only", poi_ruleset;
    std::string poi_valence, poi_emotions, poi_deceit, poi_blank_fill = "zero";
    poi->add_option("--financial", poi_financial, "Insider-pay CSV")->required();
    poi->add_option("--corpus", poi_corpus, "Corpus CSV (for email features)");
    poi->add_option("--mode", poi_mode, "financial_only, combined or email_only")
        ->check(CLI::IsMember({"financial_only", "combined", "email_only"}));
    poi->add_option("--ruleset", poi_ruleset, "Evaluate a builtin ruleset against the labels");
    poi->add_option("--valence", poi_valence, "Valence lexicon TSV");
    poi->add_option("--emotions", poi_emotions, "Emotion lexicon TSV");
    poi->add_option("--deceit", poi_deceit, "Deception term list");
    poi->add_option("--blank-fill", poi_blank_fill, "zero, median or mean")
        ->check(CLI::IsMember({"zero", "median", "mean"}));
    add_globals(poi, g_poi);

    // --------------------------------------------------------- benford ----
    auto* benford = app.add_subcommand("benford", "First-digit conformity check");
    GlobalOpts g_benford;
    std::string ben_corpus, ben_series = "body_length", ben_file;
    benford->add_option("--corpus", ben_corpus, "Corpus CSV path");
    benford->add_option("--series", ben_series, "body_length or daily_count")
        ->check(CLI::IsMember({"body_length", "daily_count"}));
    benford->add_option("--file", ben_file, "Whitespace-separated numbers file");
    add_globals(benford, g_benford);

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) {
        json options;
        apply_globals(options, g_ingest);
        options["label_column"] = ingest_label;
        if (!ingest_aliases.empty()) options["aliases"] = ingest_aliases;
        CorpusHandle corpus;
        corpus.ptr = open_corpus(ingest_corpus, options);
        StringOut summary;
        check(mm_corpus_summary_json(corpus.ptr, summary.slot()));
        write_output(summary.str(), g_ingest);
        std::cerr << "ingested " << mm_corpus_doc_count(corpus.ptr) << " documents from "
                  << ingest_corpus << "\n";
        return 0;
    }

    if (pii->parsed()) {
        json options;
        apply_globals(options, g_pii);
        if (!pii_dl_table.empty()) options["dl_table"] = pii_dl_table;
        options["include_email_ip"] = pii_email_ip;
        options["no_echo"] = pii_no_echo;
        CorpusHandle corpus;
        corpus.ptr = open_corpus(pii_corpus, json::object());
        StringOut report;
        check(mm_pii_report_json(corpus.ptr, options.dump().c_str(), report.slot()));
        if (!pii_findings.empty()) {
            StringOut findings;
            check(mm_pii_findings_jsonl(corpus.ptr, options.dump().c_str(), findings.slot()));
            write_file_or_stdout(findings.str(), pii_findings);
        }
        write_output(report.str(), g_pii);
        std::cerr << "pii scan of " << mm_corpus_doc_count(corpus.ptr) << " documents done\n";
        return 0;
    }

    if (train->parsed()) {
        json options;
        apply_globals(options, g_train);
        options["sampler"] = train_sampler;
        options["algo"] = train_algo;
        options["test_fraction"] = train_test_fraction;
        options["cv_folds"] = train_cv;
        options["min_split"] = train_min_split;
        options["min_leaf"] = train_min_leaf;
        options["max_depth"] = train_max_depth;
        options["cp"] = train_cp;
        options["trees"] = train_trees;
        options["mtry"] = train_mtry;
        options["k"] = train_k;

        ModelHandle model;
        if (train_target == "responsive") {
            if (train_corpus.empty()) {
                std::cerr << "error: --target responsive needs --corpus\n";
                return 2;
            }
            options["max_sparsity"] = train_sparsity;
            options["tfidf"] = train_tfidf;
            if (!train_stopwords.empty()) options["stopwords"] = train_stopwords;
            json corpus_options{{"label_column", train_label}};
            CorpusHandle corpus;
            corpus.ptr = open_corpus(train_corpus, corpus_options);
            check(mm_train_responsive(corpus.ptr, options.dump().c_str(), &model.ptr));
        } else {
            if (train_financial.empty()) {
                std::cerr << "error: --target poi needs --financial\n";
                return 2;
            }
            options["mode"] = train_mode;
            if (!train_valence.empty()) options["valence"] = train_valence;
            if (!train_emotions.empty()) options["emotions"] = train_emotions;
            if (!train_deceit.empty()) options["deceit"] = train_deceit;
            CorpusHandle corpus;
            if (!train_corpus.empty()) corpus.ptr = open_corpus(train_corpus, json::object());
            check(mm_train_poi(train_financial.c_str(), corpus.ptr, options.dump().c_str(),
                               &model.ptr));
        }
        check(mm_model_save(model.ptr, train_model_out.c_str()));
        StringOut metrics;
        check(mm_model_metrics_json(model.ptr, metrics.slot()));
        write_output(metrics.str(), g_train);
        std::cerr << "model written to " << train_model_out << "\n";
        return 0;
    }

    if (classify->parsed()) {
        if (cls_model.empty() == cls_ruleset.empty()) {
            std::cerr << "error: classify needs exactly one of --model / --ruleset\n";
            return 2;
        }
        if (cls_corpus.empty() == cls_features.empty()) {
            std::cerr << "error: classify needs exactly one of --corpus / --features\n";
            return 2;
        }
        ModelHandle model;
        if (!cls_model.empty()) check(mm_model_load(cls_model.c_str(), &model.ptr));
        else check(mm_model_builtin(cls_ruleset.c_str(), &model.ptr));

        StringOut lines, aggregate;
        if (!cls_corpus.empty()) {
            CorpusHandle corpus;
            corpus.ptr = open_corpus(cls_corpus, json{{"label_column", cls_label_column}});
            check(mm_classify_corpus(model.ptr, corpus.ptr, lines.slot(), aggregate.slot()));
        } else {
            check(mm_classify_table(model.ptr, cls_features.c_str(), lines.slot(),
                                    aggregate.slot()));
        }
        if (!cls_labels.empty()) write_file_or_stdout(lines.str(), cls_labels);
        write_output(aggregate.str(), g_classify);
        std::cerr << "classification done\n";
        return 0;
    }

    if (rules->parsed()) {
        if (rules_model.empty() == rules_ruleset.empty()) {
            std::cerr << "error: rules needs exactly one of --model / --ruleset\n";
            return 2;
        }
        ModelHandle model;
        if (!rules_model.empty()) check(mm_model_load(rules_model.c_str(), &model.ptr));
        else check(mm_model_builtin(rules_ruleset.c_str(), &model.ptr));
        StringOut text;
        check(mm_model_rules_text(model.ptr, text.slot()));
        write_output(text.str(), g_rules);
        return 0;
    }

    if (sentiment->parsed()) {
        json options;
        apply_globals(options, g_sent);
        options["valence"] = sent_valence;
        options["emotions"] = sent_emotions;
        if (!sent_deceit.empty()) options["deceit"] = sent_deceit;
        options["bucket"] = sent_bucket;
        options["cluster_top"] = sent_cluster_top;
        CorpusHandle corpus;
        corpus.ptr = open_corpus(sent_corpus, json::object());
        StringOut report;
        check(mm_sentiment_report_json(corpus.ptr, options.dump().c_str(), report.slot()));
        write_output(report.str(), g_sent);
        std::cerr << "sentiment report over " << mm_corpus_doc_count(corpus.ptr)
                  << " documents done\n";
        return 0;
    }

    if (poi->parsed()) {
        json options;
        apply_globals(options, g_poi);
        options["mode"] = poi_mode;
        options["blank_fill"] = poi_blank_fill;
        if (!poi_ruleset.empty()) options["ruleset"] = poi_ruleset;
        if (!poi_valence.empty()) options["valence"] = poi_valence;
        if (!poi_emotions.empty()) options["emotions"] = poi_emotions;
        if (!poi_deceit.empty()) options["deceit"] = poi_deceit;
        CorpusHandle corpus;
        if (!poi_corpus.empty()) corpus.ptr = open_corpus(poi_corpus, json::object());
        StringOut report;
        check(mm_poi_dataset_json(poi_financial.c_str(), corpus.ptr, options.dump().c_str(),
                                  report.slot()));
        write_output(report.str(), g_poi);
        return 0;
    }

    if (benford->parsed()) {
        StringOut report;
        if (!ben_file.empty()) {
            check(mm_benford_file_json(ben_file.c_str(), report.slot()));
        } else if (!ben_corpus.empty()) {
            CorpusHandle corpus;
            corpus.ptr = open_corpus(ben_corpus, json::object());
            check(mm_benford_corpus_json(corpus.ptr, ben_series.c_str(), report.slot()));
        } else {
            std::cerr << "error: benford needs --corpus or --file\n";
            return 2;
        }
        write_output(report.str(), g_benford);
        return 0;
    }

    return 0;
}
