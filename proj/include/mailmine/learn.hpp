#pragma once

#include "mailmine/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mailmine {

struct LabeledDataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows; // all rows share feature_names arity
    std::vector<int> labels;               // 0 or 1, aligned with rows
    std::vector<std::string> row_ids;      // optional (person keys, doc ids)
    std::string positive_name = "positive";
    std::string negative_name = "negative";

    size_t size() const { return rows.size(); }
    size_t count_label(int label) const;
    LabeledDataset subset(const std::vector<size_t>& indices) const;
};

// ---------------------------------------------------------------- trees ---

struct CartParams {
    int min_split = 20;             // fewest rows a node needs to try a split
    int min_leaf = 7;               // fewest rows either child may hold
    int max_depth = 30;
    double complexity_penalty = 0.01; // required Gini decrease, as a fraction
                                      // of root impurity scaled by node share
};

struct TreeNode {
    int32_t feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int32_t left = -1;  // rows with value <  threshold
    int32_t right = -1; // rows with value >= threshold
    int64_t counts[2] = {0, 0};
    int label = 0; // majority class, ties resolved to 0

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    std::vector<std::string> feature_names;
    std::string positive_name = "positive";
    std::string negative_name = "negative";

    int predict(const std::vector<double>& features) const;
    double predict_proba(const std::vector<double>& features) const;
    size_t leaf_for(const std::vector<double>& features) const;
};

// Greedy binary CART on Gini impurity. Split thresholds sit at midpoints of
// adjacent observed values; equal-gain candidates resolve to the lowest
// feature index, then the lowest threshold.
DecisionTree train_cart(const LabeledDataset& ds, const CartParams& params = {});

// ---------------------------------------------------------------- rules ---

struct RuleCondition {
    std::string feature;
    bool less = true; // true: feature < threshold, false: feature >= threshold
    double threshold = 0.0;
};

struct Rule {
    std::vector<RuleCondition> conditions; // conjunction; empty matches all
    int label = 0;
};

struct RuleSet {
    std::vector<Rule> rules; // evaluation and display order
    std::optional<int> default_label;
    std::string positive_name = "positive";
    std::string negative_name = "negative";
    // Text-form overrides: group banner per label and features rendered as
    // dollar amounts.
    std::map<int, std::string> group_headers;
    std::vector<std::string> currency_features;

    bool matches(const Rule& rule, const std::map<std::string, double>& features) const;
};

// One rule per leaf, conditions in root-to-leaf order; label-0 rules listed
// before label-1 rules, both groups in left-first tree order.
RuleSet extract_rules(const DecisionTree& tree);

// First matching rule wins; tree-derived rule sets match exactly once.
// Features absent from the map count as zero. Throws when nothing matches
// and no default label exists.
int apply_ruleset(const RuleSet& rs, const std::map<std::string, double>& features);

// Index-bound variant for scoring large corpora without per-call lookups.
class RuleMatcher {
public:
    RuleMatcher(const RuleSet& rs, const std::vector<std::string>& feature_names);
    int apply(const std::vector<double>& features) const;

private:
    struct BoundCondition {
        int32_t feature;
        bool less;
        double threshold;
    };
    struct BoundRule {
        std::vector<BoundCondition> conditions;
        int label;
    };
    std::vector<BoundRule> rules_;
    std::optional<int> default_label_;
};

// Figure-style text rendering, one numbered rule per line with the rules
// grouped by predicted class.
std::string render_ruleset(const RuleSet& rs);

// --------------------------------------------------------------- forest ---

struct ForestParams {
    int n_trees = 100;
    int mtry = 0;          // candidate features per split; 0 = floor(sqrt(p))
    bool bootstrap = true; // test hook: false trains every tree on all rows
    CartParams cart{2, 1, 30, 0.0};
};

struct Forest {
    std::vector<DecisionTree> trees;
    std::vector<std::vector<size_t>> oob_indices; // per tree, sorted
    uint64_t seed = 0;
    int mtry = 0;

    int predict(const std::vector<double>& features) const;
    double predict_proba(const std::vector<double>& features) const;
};

// Bootstrap-aggregated CART ensemble. Per-tree randomness derives from
// (seed, tree index), so parallel and serial builds are identical.
Forest train_forest(const LabeledDataset& ds, const ForestParams& params, uint64_t seed,
                    unsigned jobs = 1);

// Total Gini decrease credited to each feature across all trees, scaled so
// the largest equals 100; descending, ties by feature order.
std::vector<std::pair<std::string, double>> variable_importance(const Forest& forest);

// ----------------------------------------------------------------- knn ----

// Euclidean k-nearest-neighbour vote. Distance ties prefer the lower row
// index; vote ties resolve to label 0.
int knn_predict(const LabeledDataset& train, int k, const std::vector<double>& features);

// ------------------------------------------------------------ resampling --

struct TrainTestSplit {
    LabeledDataset train;
    LabeledDataset test;
};

// Seeded shuffle; test size = round(test_fraction * n). Row order inside
// each part follows the original dataset.
TrainTestSplit split_train_test(const LabeledDataset& ds, double test_fraction, uint64_t seed);

// Majority class sampled down (without replacement) to the minority count.
LabeledDataset undersample(const LabeledDataset& ds, uint64_t seed);

// Minority class grown to the majority count by duplicating existing rows
// (sampled with replacement); originals are kept verbatim.
LabeledDataset oversample(const LabeledDataset& ds, uint64_t seed);

// Mean accuracy over k contiguous folds of a seeded shuffle. fit returns a
// classifier for one training fold.
using FitFunction =
    std::function<std::function<int(const std::vector<double>&)>(const LabeledDataset&)>;
double cross_validate(const LabeledDataset& ds, int folds, uint64_t seed, const FitFunction& fit);

// ------------------------------------------------------------ internals ---

// Gini impurity of a two-class count pair.
double gini_impurity(int64_t c0, int64_t c1);

} // namespace mailmine
