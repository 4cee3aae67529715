#include "mailmine/session.hpp"

#include "mailmine/benford.hpp"
#include "mailmine/errors.hpp"
#include "mailmine/metrics.hpp"
#include "mailmine/parallel.hpp"
#include "mailmine/poi.hpp"
#include "mailmine/sentiment.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace mailmine::session {

namespace {

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(std::string(what) + ": cannot open '" + path + "'");
    return in;
}

ParseOptions parse_options_from(const json& options) {
    ParseOptions opts;
    if (options.contains("label_column")) opts.label_column = options["label_column"];
    if (options.contains("poi_column")) opts.poi_column = options["poi_column"];
    return opts;
}

AliasTable aliases_from(const json& options) {
    if (!options.contains("aliases")) return AliasTable{};
    std::string path = options["aliases"];
    auto in = open_input(path, "alias roster");
    return AliasTable::load_roster(in);
}

unsigned jobs_from(const json& options) {
    if (options.contains("jobs")) {
        long long j = options["jobs"].get<long long>();
        if (j >= 1) return static_cast<unsigned>(j);
    }
    return default_jobs();
}

uint64_t seed_from(const json& options) {
    return options.value("seed", uint64_t{42}); // fixed default keeps runs reproducible
}

json emotion_counts_json(const EmotionCounts& counts) {
    json j = json::object();
    for (size_t e = 0; e < kEmotionCount; ++e)
        j[emotion_name(static_cast<Emotion>(e))] = counts[e];
    return j;
}

} // namespace

Corpus open_corpus_file(const std::string& path, const json& options) {
    auto in = open_input(path, "corpus CSV");
    return parse_corpus(in, aliases_from(options), parse_options_from(options));
}

Corpus open_corpus_text(const std::string& csv_text, const json& options) {
    std::istringstream in(csv_text);
    return parse_corpus(in, aliases_from(options), parse_options_from(options));
}

json corpus_summary(const Corpus& corpus) {
    CorpusStats stats = corpus_stats(corpus);
    json drops = json::array();
    for (const auto& d : corpus.report.drop_reasons)
        drops.push_back({{"record", d.record}, {"reason", d.reason}});

    json senders = json::object();
    for (const auto& [who, n] : stats.per_sender_counts) senders[who] = n;
    json daily = json::object();
    for (const auto& [day, n] : stats.daily_counts) daily[day] = n;

    int64_t body_min = 0, body_max = 0, body_sum = 0;
    for (size_t i = 0; i < stats.body_lengths.size(); ++i) {
        int64_t v = stats.body_lengths[i];
        body_min = i == 0 ? v : std::min(body_min, v);
        body_max = std::max(body_max, v);
        body_sum += v;
    }

    return json{
        {"parse_report",
         {{"rows_read", corpus.report.rows_read},
          {"rows_dropped", corpus.report.rows_dropped},
          {"drop_reasons", drops}}},
        {"stats",
         {{"doc_count", stats.doc_count},
          {"total_words", stats.total_words},
          {"sender_count", stats.per_sender_counts.size()},
          {"per_sender_counts", senders},
          {"daily_counts", daily},
          {"body_length",
           {{"min", body_min},
            {"max", body_max},
            {"mean", stats.doc_count ? static_cast<double>(body_sum) /
                                           static_cast<double>(stats.doc_count)
                                     : 0.0}}}}},
    };
}

namespace {

DetectorConfig detector_config_from(const json& options) {
    DetectorConfig config;
    if (options.contains("dl_table")) {
        std::string path = options["dl_table"];
        auto in = open_input(path, "DL format table");
        config.dl_table = DlFormatTable::load(in);
    }
    if (options.value("include_email_ip", false)) {
        config.email = true;
        config.ip_address = true;
    }
    return config;
}

} // namespace

json pii_report(const Corpus& corpus, const json& options) {
    DetectorConfig config = detector_config_from(options);
    PiiReport report = scan_corpus(corpus, config, false, jobs_from(options));
    json counts = json::object(), percentages = json::object();
    for (const auto& [cat, n] : report.counts) {
        counts[category_name(cat)] = n;
        percentages[category_name(cat)] = report.percentages.at(cat);
    }
    return json{{"counts", counts},
                {"percentages", percentages},
                {"grand_total", report.grand_total}};
}

namespace {

std::string last4_shape(const std::string& matched) {
    size_t alnum = 0;
    std::string tail;
    for (auto it = matched.rbegin(); it != matched.rend() && tail.size() < 4; ++it) {
        char c = *it;
        if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))
            tail.insert(tail.begin(), c);
    }
    for (char c : matched)
        if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++alnum;
    return "len" + std::to_string(alnum) + ":..." + tail;
}

} // namespace

std::string pii_findings_jsonl(const Corpus& corpus, const json& options) {
    DetectorConfig config = detector_config_from(options);
    bool no_echo = options.value("no_echo", false);
    PiiReport report = scan_corpus(corpus, config, true, jobs_from(options));
    std::ostringstream out;
    for (const auto& f : report.findings) {
        json line{{"doc_id", f.doc_id},
                  {"category", category_name(f.category)},
                  {"span", {f.begin, f.end}},
                  {"validated", f.validated}};
        if (no_echo) {
            line["shape"] = last4_shape(f.matched);
        } else {
            line["matched"] = f.matched;
            line["context"] = f.context;
        }
        out << line.dump() << "\n";
    }
    return out.str();
}

namespace {

LexiconSet lexicons_from(const json& options) {
    if (!options.contains("valence") || !options.contains("emotions"))
        throw InputError("sentiment: valence and emotions lexicon paths are required");
    LexiconSet set;
    {
        auto in = open_input(options["valence"].get<std::string>(), "valence lexicon");
        set.valence = Lexicon::load(in, LexiconKind::Valence);
    }
    {
        auto in = open_input(options["emotions"].get<std::string>(), "emotion lexicon");
        set.emotions = Lexicon::load(in, LexiconKind::Emotion);
    }
    if (options.contains("deceit")) {
        auto in = open_input(options["deceit"].get<std::string>(), "deceit term list");
        set.deceit = load_stopwords(in); // same newline-delimited format
    }
    return set;
}

json dendrogram_json(const Dendrogram& dg, const Corpus& corpus, int32_t index) {
    const auto& node = dg.nodes[static_cast<size_t>(index)];
    if (node.left < 0) {
        return json{{"person", corpus.aliases.person(node.person).primary_email}};
    }
    return json{{"left", dendrogram_json(dg, corpus, node.left)},
                {"right", dendrogram_json(dg, corpus, node.right)},
                {"height", node.height}};
}

} // namespace

json sentiment_report(const Corpus& corpus, const json& options) {
    LexiconSet lexicons = lexicons_from(options);
    PipelineConfig pipeline = PipelineConfig::sentiment();
    unsigned jobs = jobs_from(options);

    auto profiles = sender_profiles(corpus, pipeline, lexicons, jobs);

    json out;
    {
        auto shares = corpus_radar(profiles);
        json radar = json::object();
        for (size_t e = 0; e < kEmotionCount; ++e)
            radar[emotion_name(static_cast<Emotion>(e))] = shares[e];
        out["radar"] = radar;
    }
    {
        std::string bucket_name = options.value("bucket", "month");
        if (bucket_name != "month" && bucket_name != "week")
            throw InputError("sentiment: bucket must be month or week");
        TimeBucket bucket = bucket_name == "week" ? TimeBucket::Week : TimeBucket::Month;
        json series = json::array();
        for (const auto& point : timeline(corpus, bucket, pipeline, lexicons))
            series.push_back({{"period", point.period},
                              {"emotions", emotion_counts_json(point.emotions)},
                              {"valence", point.valence},
                              {"doc_count", point.doc_count}});
        out["timeline"] = series;
    }
    {
        // Cluster the most prolific senders; a full 10k-person dendrogram is
        // unreadable and quadratic.
        size_t top = options.value("cluster_top", size_t{40});
        std::vector<std::pair<int64_t, PersonId>> volume;
        for (const auto& [person, prof] : profiles)
            volume.emplace_back(prof.token_total, person);
        std::sort(volume.begin(), volume.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        std::map<PersonId, EmotionProfile> selected;
        for (const auto& [tokens, person] : volume) {
            if (selected.size() >= top) break;
            selected[person] = profiles.at(person);
        }
        json senders = json::object();
        for (const auto& [person, prof] : profiles) {
            json p{{"emotions", emotion_counts_json(prof.counts)},
                   {"valence", prof.valence_sum},
                   {"tokens", prof.token_total}};
            if (prof.deception_hits > 0) p["deception"] = prof.deception_hits;
            senders[corpus.aliases.person(person).primary_email] = p;
        }
        out["senders"] = senders;
        try {
            Dendrogram dg = cluster_profiles(selected);
            out["clusters"] = dendrogram_json(dg, corpus, dg.root);
        } catch (const InputError&) {
            out["clusters"] = nullptr; // fewer than two senders with signal
        }
    }
    return out;
}

namespace {

json conformity_json(const ConformityReport& report) {
    json counts = json::array(), freq = json::array(), expected = json::array();
    auto exp = benford_expected();
    for (size_t i = 0; i < 9; ++i) {
        counts.push_back(report.distribution.counts[i]);
        freq.push_back(report.distribution.freq[i]);
        expected.push_back(exp[i]);
    }
    return json{{"n", report.distribution.n}, {"counts", counts},
                {"freq", freq},              {"expected", expected},
                {"chi_square", report.chi_square}, {"mad", report.mad},
                {"verdict", report.verdict}};
}

} // namespace

json benford_corpus(const Corpus& corpus, const std::string& series) {
    CorpusStats stats = corpus_stats(corpus);
    std::vector<double> values;
    if (series == "body_length") {
        for (int64_t v : stats.body_lengths) values.push_back(static_cast<double>(v));
    } else if (series == "daily_count") {
        for (const auto& [day, n] : stats.daily_counts)
            values.push_back(static_cast<double>(n));
    } else {
        throw InputError("benford: series must be body_length or daily_count");
    }
    json out = conformity_json(conformity(values));
    out["series"] = series;
    return out;
}

json benford_values(const std::vector<double>& values) {
    json out = conformity_json(conformity(values));
    out["series"] = "values";
    return out;
}

std::vector<double> read_values_file(const std::string& path) {
    auto in = open_input(path, "value series");
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    return values;
}

namespace {

struct TrainSettings {
    std::string sampler;
    std::string algo;
    double test_fraction;
    int cv_folds;
    uint64_t seed;
    unsigned jobs;
    CartParams cart;
    ForestParams forest;
    int knn_k;
};

TrainSettings train_settings_from(const json& options) {
    TrainSettings s;
    s.sampler = options.value("sampler", "none");
    if (s.sampler != "none" && s.sampler != "under" && s.sampler != "over")
        throw InputError("train: sampler must be none, under or over");
    s.algo = options.value("algo", "cart");
    if (s.algo != "cart" && s.algo != "forest" && s.algo != "knn")
        throw InputError("train: algo must be cart, forest or knn");
    s.test_fraction = options.value("test_fraction", 0.3);
    s.cv_folds = options.value("cv_folds", 3);
    s.seed = seed_from(options);
    s.jobs = jobs_from(options);
    s.cart.min_split = options.value("min_split", 20);
    s.cart.min_leaf = options.value("min_leaf", 7);
    s.cart.max_depth = options.value("max_depth", 30);
    s.cart.complexity_penalty = options.value("cp", 0.01);
    s.forest.n_trees = options.value("trees", 100);
    s.forest.mtry = options.value("mtry", 0);
    s.forest.cart = CartParams{2, 1, s.cart.max_depth, 0.0};
    s.knn_k = options.value("k", 5);
    return s;
}

LabeledDataset resample(const LabeledDataset& ds, const std::string& sampler, uint64_t seed) {
    if (sampler == "under") return undersample(ds, seed);
    if (sampler == "over") return oversample(ds, seed);
    return ds;
}

// Train + evaluate on a held-out split; fills model.metrics.
Model fit_and_evaluate(const LabeledDataset& full, const TrainSettings& s) {
    auto split = split_train_test(full, s.test_fraction, s.seed);
    LabeledDataset train = resample(split.train, s.sampler, s.seed + 1);

    Model model;
    model.feature_names = full.feature_names;
    model.positive_name = full.positive_name;
    model.negative_name = full.negative_name;

    FitFunction fit;
    if (s.algo == "cart") {
        model.kind = Model::Kind::Cart;
        model.tree = train_cart(train, s.cart);
        CartParams cart = s.cart;
        fit = [cart](const LabeledDataset& d) {
            auto tree = std::make_shared<DecisionTree>(train_cart(d, cart));
            return [tree](const std::vector<double>& row) { return tree->predict(row); };
        };
    } else if (s.algo == "forest") {
        model.kind = Model::Kind::Forest;
        model.forest = train_forest(train, s.forest, s.seed, s.jobs);
        ForestParams fp = s.forest;
        uint64_t seed = s.seed;
        unsigned jobs = s.jobs;
        fit = [fp, seed, jobs](const LabeledDataset& d) {
            auto forest = std::make_shared<Forest>(train_forest(d, fp, seed, jobs));
            return [forest](const std::vector<double>& row) { return forest->predict(row); };
        };
    } else {
        model.kind = Model::Kind::Knn;
        model.knn_train = train;
        model.knn_k = std::min<int>(s.knn_k, static_cast<int>(train.size()));
        int k = model.knn_k;
        fit = [k](const LabeledDataset& d) {
            auto data = std::make_shared<LabeledDataset>(d);
            int kk = std::min<int>(k, static_cast<int>(d.size()));
            return [data, kk](const std::vector<double>& row) {
                return knn_predict(*data, kk, row);
            };
        };
    }

    // held-out metrics
    std::vector<int> predicted, actual;
    std::vector<double> scores;
    for (size_t i = 0; i < split.test.size(); ++i) {
        predicted.push_back(model.predict(split.test.rows[i]));
        scores.push_back(model.score(split.test.rows[i]));
        actual.push_back(split.test.labels[i]);
    }
    json metrics;
    if (!predicted.empty()) {
        ConfusionMatrix cm = confusion(predicted, actual);
        DerivedMetrics d = derive(cm);
        metrics["matrix"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) metrics[key] = *v;
        };
        put("accuracy", d.accuracy);
        put("sensitivity", d.sensitivity);
        put("specificity", d.specificity);
        put("fpr", d.fpr);
        put("fnr", d.fnr);
        bool both = split.test.count_label(0) > 0 && split.test.count_label(1) > 0;
        if (both) metrics["auroc"] = auroc(scores, actual);
    }
    metrics["train_rows"] = train.size();
    metrics["test_rows"] = split.test.size();
    metrics["sampler"] = s.sampler;
    metrics["algo"] = s.algo;
    if (train.size() >= static_cast<size_t>(s.cv_folds) && s.cv_folds >= 2 &&
        train.count_label(0) > 0 && train.count_label(1) > 0)
        metrics["cv_accuracy"] = cross_validate(train, s.cv_folds, s.seed + 2, fit);
    model.metrics = metrics;
    return model;
}

} // namespace

Model train_responsive(const Corpus& corpus, const json& options) {
    if (!corpus.has_labels)
        throw InputError("train: corpus has no label column (expected one named '" +
                         parse_options_from(options).label_column + "')");

    TrainSettings s = train_settings_from(options);
    double max_sparsity = options.value("max_sparsity", 0.97);
    bool use_tfidf = options.value("tfidf", false);

    PipelineConfig pipeline = PipelineConfig::discovery();
    if (options.contains("stopwords")) {
        auto in = open_input(options["stopwords"].get<std::string>(), "stopword list");
        pipeline.stopwords = load_stopwords(in);
    }

    std::vector<TokenStream> token_docs;
    std::vector<std::string> doc_ids;
    std::vector<int> labels;
    for (size_t d = 0; d < corpus.docs.size(); ++d) {
        if (!corpus.labels[d].has_value()) continue; // unlabeled rows don't train
        const auto& doc = corpus.docs[d];
        token_docs.push_back(run_pipeline(doc.subject + "\n" + doc.body, pipeline));
        doc_ids.push_back(doc.id);
        labels.push_back(*corpus.labels[d] ? 1 : 0);
    }
    if (token_docs.empty()) throw InputError("train: no labeled documents");

    DocTermMatrix dtm = build_dtm(token_docs, doc_ids);
    dtm = prune_sparse(dtm, max_sparsity);
    if (use_tfidf) dtm = tfidf(dtm);

    LabeledDataset ds;
    ds.feature_names = dtm.vocab.terms;
    ds.positive_name = "responsive";
    ds.negative_name = "non-responsive";
    ds.labels = labels;
    ds.rows.resize(dtm.rows.size());
    for (size_t d = 0; d < dtm.rows.size(); ++d) {
        ds.rows[d].assign(ds.feature_names.size(), 0.0);
        for (const auto& [t, v] : dtm.rows[d]) ds.rows[d][static_cast<size_t>(t)] = v;
    }

    Model model = fit_and_evaluate(ds, s);
    model.vocabulary = dtm.vocab;
    model.pipeline = pipeline;
    model.use_tfidf = use_tfidf;
    model.metrics["vocabulary_terms"] = dtm.vocab.terms.size();
    return model;
}

namespace {

LabeledDataset poi_dataset_build(const std::string& financial_csv_path, const Corpus* corpus,
                                 const json& options, FinancialLoad* load_out) {
    auto in = open_input(financial_csv_path, "financial CSV");
    std::string fill_name = options.value("blank_fill", "zero");
    BlankFill fill = BlankFill::Zero;
    if (fill_name == "median") fill = BlankFill::Median;
    else if (fill_name == "mean") fill = BlankFill::Mean;
    else if (fill_name != "zero") throw InputError("blank_fill must be zero, median or mean");
    FinancialLoad load = load_financials(in, fill);

    std::string mode_name = options.value("mode", corpus ? "combined" : "financial_only");
    JoinMode mode = JoinMode::FinancialOnly;
    if (mode_name == "combined") mode = JoinMode::Combined;
    else if (mode_name == "email_only") mode = JoinMode::EmailOnly;
    else if (mode_name != "financial_only")
        throw InputError("mode must be financial_only, combined or email_only");
    if (mode != JoinMode::FinancialOnly && !corpus)
        throw InputError("mode '" + mode_name + "' needs a corpus");

    std::vector<EmailFeatures> email;
    if (mode != JoinMode::FinancialOnly) {
        std::set<PersonId> poi_set;
        for (const auto& doc : corpus->docs)
            if (doc.poi_flag) poi_set.insert(doc.sender);
        std::map<PersonId, EmotionProfile> profiles;
        if (options.contains("valence") && options.contains("emotions"))
            profiles = sender_profiles(*corpus, PipelineConfig::sentiment(),
                                       lexicons_from(options), jobs_from(options));
        email = email_features(*corpus, poi_set, profiles);
    }
    if (load_out) *load_out = load;
    return join_features(load.records, load.feature_names, email, mode);
}

} // namespace

Model train_poi(const std::string& financial_csv_path, const Corpus* corpus,
                const json& options) {
    TrainSettings s = train_settings_from(options);
    FinancialLoad load;
    LabeledDataset ds = poi_dataset_build(financial_csv_path, corpus, options, &load);
    Model model = fit_and_evaluate(ds, s);
    model.metrics["blank_cells"] = load.blank_cells;
    model.metrics["total_cells"] = load.total_cells;
    return model;
}

Model builtin_model(const std::string& name) {
    Model model;
    model.kind = Model::Kind::Ruleset;
    model.ruleset = builtin_ruleset(name);
    model.positive_name = model.ruleset.positive_name;
    model.negative_name = model.ruleset.negative_name;
    std::set<std::string> names;
    for (const auto& rule : model.ruleset.rules)
        for (const auto& c : rule.conditions) names.insert(c.feature);
    model.feature_names.assign(names.begin(), names.end());
    return model;
}

std::string classify_corpus_jsonl(const Model& model, const Corpus& corpus, json* aggregate) {
    std::ostringstream out;
    int64_t positive = 0;

    if (model.vocabulary) {
        for (const auto& doc : corpus.docs) {
            TokenStream tokens = run_pipeline(doc.subject + "\n" + doc.body, model.pipeline);
            std::vector<double> features = project(*model.vocabulary, tokens, model.use_tfidf);
            int label = model.predict(features);
            positive += label;
            out << json{{"doc_id", doc.id}, {"label", label}, {"score", model.score(features)}}
                       .dump()
                << "\n";
        }
    } else if (model.kind == Model::Kind::Ruleset) {
        // Built-in text rule sets score raw stemmed-term counts.
        PipelineConfig pipeline = PipelineConfig::discovery();
        Vocabulary vocab;
        vocab.terms = model.feature_names;
        std::sort(vocab.terms.begin(), vocab.terms.end());
        vocab.doc_freq.assign(vocab.terms.size(), 1);
        vocab.n_docs = 1;
        RuleMatcher matcher(model.ruleset, vocab.terms);
        for (const auto& doc : corpus.docs) {
            TokenStream tokens = run_pipeline(doc.subject + "\n" + doc.body, pipeline);
            std::vector<double> features = project(vocab, tokens, false);
            int label = matcher.apply(features);
            positive += label;
            out << json{{"doc_id", doc.id}, {"label", label}}.dump() << "\n";
        }
    } else {
        throw InputError("classify: model carries no vocabulary for corpus scoring");
    }

    if (aggregate) {
        int64_t total = static_cast<int64_t>(corpus.docs.size());
        *aggregate = json{{"total", total},
                          {"positive", positive},
                          {"positive_fraction",
                           total ? static_cast<double>(positive) / static_cast<double>(total)
                                 : 0.0}};
    }
    return out.str();
}

std::string classify_table_jsonl(const Model& model, const std::string& feature_csv_path,
                                 json* aggregate) {
    auto in = open_input(feature_csv_path, "feature CSV");
    FinancialLoad load = load_financials(in, BlankFill::Zero);

    // order rows by the model's feature names; unknown model features are 0
    std::ostringstream out;
    int64_t positive = 0;
    std::vector<int> predicted, actual;
    for (const auto& rec : load.records) {
        std::vector<double> row;
        row.reserve(model.feature_names.size());
        for (const auto& name : model.feature_names) {
            auto it = rec.features.find(name);
            row.push_back(it == rec.features.end() ? 0.0 : it->second);
        }
        int label = model.predict(row);
        positive += label;
        predicted.push_back(label);
        actual.push_back(rec.poi ? 1 : 0);
        out << json{{"person", rec.person}, {"label", label}}.dump() << "\n";
    }

    if (aggregate) {
        int64_t total = static_cast<int64_t>(load.records.size());
        *aggregate = json{{"total", total},
                          {"positive", positive},
                          {"positive_fraction",
                           total ? static_cast<double>(positive) / static_cast<double>(total)
                                 : 0.0}};
        bool any_poi = std::count(actual.begin(), actual.end(), 1) > 0;
        if (any_poi && !predicted.empty()) {
            ConfusionMatrix cm = confusion(predicted, actual);
            DerivedMetrics d = derive(cm);
            json metrics{{"matrix", {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}}}};
            if (d.accuracy) metrics["accuracy"] = *d.accuracy;
            if (d.sensitivity) metrics["sensitivity"] = *d.sensitivity;
            if (d.specificity) metrics["specificity"] = *d.specificity;
            (*aggregate)["metrics"] = metrics;
        }
    }
    return out.str();
}

json poi_dataset(const std::string& financial_csv_path, const Corpus* corpus,
                 const json& options) {
    FinancialLoad load;
    LabeledDataset ds = poi_dataset_build(financial_csv_path, corpus, options, &load);

    json rows = json::array();
    for (size_t i = 0; i < ds.rows.size(); ++i)
        rows.push_back({{"person", i < ds.row_ids.size() ? ds.row_ids[i] : ""},
                        {"features", ds.rows[i]},
                        {"poi", ds.labels[i]}});
    json out{{"feature_names", ds.feature_names},
             {"rows", rows},
             {"persons", ds.rows.size()},
             {"poi_count", ds.count_label(1)},
             {"blank_cells", load.blank_cells},
             {"total_cells", load.total_cells}};

    if (options.contains("ruleset")) {
        Model rs = builtin_model(options["ruleset"].get<std::string>());
        std::vector<int> predicted;
        for (size_t i = 0; i < ds.rows.size(); ++i) {
            std::vector<double> row;
            for (const auto& name : rs.feature_names) {
                double v = 0.0;
                for (size_t f = 0; f < ds.feature_names.size(); ++f)
                    if (ds.feature_names[f] == name) v = ds.rows[i][f];
                row.push_back(v);
            }
            predicted.push_back(rs.predict(row));
        }
        ConfusionMatrix cm = confusion(predicted, ds.labels);
        DerivedMetrics d = derive(cm);
        json metrics{{"matrix", {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}}}};
        if (d.accuracy) metrics["accuracy"] = *d.accuracy;
        if (d.sensitivity) metrics["sensitivity"] = *d.sensitivity;
        if (d.specificity) metrics["specificity"] = *d.specificity;
        out["ruleset"] = options["ruleset"];
        out["ruleset_metrics"] = metrics;
    }
    return out;
}

} // namespace mailmine::session
