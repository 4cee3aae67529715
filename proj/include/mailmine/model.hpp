#pragma once

#include "mailmine/dtm.hpp"
#include "mailmine/learn.hpp"
#include "mailmine/textpipe.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace mailmine {

// A trained (or built-in) classifier plus everything needed to score new
// inputs: the text projection for corpus models, the feature order for
// tabular ones, and the metrics captured at training time.
struct Model {
    enum class Kind { Cart, Forest, Knn, Ruleset };
    Kind kind = Kind::Cart;

    std::vector<std::string> feature_names;
    std::string positive_name = "positive";
    std::string negative_name = "negative";

    DecisionTree tree;        // Cart
    Forest forest;            // Forest
    LabeledDataset knn_train; // Knn
    int knn_k = 5;
    RuleSet ruleset;          // Ruleset

    // Corpus-scoring context (absent for tabular models).
    std::optional<Vocabulary> vocabulary;
    PipelineConfig pipeline;
    bool use_tfidf = false;

    nlohmann::json metrics = nlohmann::json::object();

    int predict(const std::vector<double>& features) const;
    // Tree and forest models yield a genuine probability; rule sets and kNN
    // fall back to their hard label.
    double score(const std::vector<double>& features) const;
    RuleSet rules() const; // Cart extracts, Ruleset returns itself
};

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

} // namespace mailmine
