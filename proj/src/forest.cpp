#include "mailmine/learn.hpp"

#include "mailmine/errors.hpp"
#include "mailmine/parallel.hpp"
#include "mailmine/tree_builder.hpp"

#include <algorithm>
#include <cmath>

namespace mailmine {

int Forest::predict(const std::vector<double>& features) const {
    return predict_proba(features) >= 0.5 ? 1 : 0;
}

double Forest::predict_proba(const std::vector<double>& features) const {
    if (trees.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.predict_proba(features);
    return sum / static_cast<double>(trees.size());
}

Forest train_forest(const LabeledDataset& ds, const ForestParams& params, uint64_t seed,
                    unsigned jobs) {
    if (ds.rows.empty()) throw InputError("train_forest: empty dataset");
    if (params.n_trees < 1) throw InputError("train_forest: n_trees must be >= 1");
    const int n_features = static_cast<int>(ds.feature_names.size());
    int mtry = params.mtry;
    if (mtry == 0)
        mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_features))));
    if (mtry < 1 || mtry > n_features)
        throw InputError("train_forest: mtry out of range");

    Forest forest;
    forest.seed = seed;
    forest.mtry = mtry;
    forest.trees.resize(static_cast<size_t>(params.n_trees));
    forest.oob_indices.resize(static_cast<size_t>(params.n_trees));

    const size_t n = ds.rows.size();
    Rng base(seed);
    parallel_shards(static_cast<size_t>(params.n_trees), jobs,
                    [&](size_t, size_t begin, size_t end) {
        for (size_t t = begin; t < end; ++t) {
            Rng rng = base.fork(t);
            std::vector<size_t> sample;
            std::vector<char> in_bag(n, 0);
            sample.reserve(n);
            if (params.bootstrap) {
                for (size_t i = 0; i < n; ++i) {
                    size_t pick = static_cast<size_t>(rng.uniform_index(n));
                    sample.push_back(pick);
                    in_bag[pick] = 1;
                }
            } else {
                for (size_t i = 0; i < n; ++i) {
                    sample.push_back(i);
                    in_bag[i] = 1;
                }
            }
            detail::TreeBuilder builder(ds, params.cart);
            forest.trees[t] = builder.train(sample, &rng, mtry);
            for (size_t i = 0; i < n; ++i)
                if (!in_bag[i]) forest.oob_indices[t].push_back(i);
        }
    });
    return forest;
}

std::vector<std::pair<std::string, double>> variable_importance(const Forest& forest) {
    if (forest.trees.empty()) throw InputError("variable_importance: empty forest");
    const auto& names = forest.trees[0].feature_names;
    std::vector<double> decrease(names.size(), 0.0);

    for (const auto& tree : forest.trees) {
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            const TreeNode& l = tree.nodes[static_cast<size_t>(node.left)];
            const TreeNode& r = tree.nodes[static_cast<size_t>(node.right)];
            auto rows = [](const TreeNode& x) {
                return static_cast<double>(x.counts[0] + x.counts[1]);
            };
            double d = rows(node) * gini_impurity(node.counts[0], node.counts[1]) -
                       rows(l) * gini_impurity(l.counts[0], l.counts[1]) -
                       rows(r) * gini_impurity(r.counts[0], r.counts[1]);
            decrease[static_cast<size_t>(node.feature)] += d;
        }
    }

    double max_d = 0.0;
    for (double d : decrease) max_d = std::max(max_d, d);
    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(names.size());
    for (size_t i = 0; i < names.size(); ++i)
        ranked.emplace_back(names[i], max_d > 0.0 ? decrease[i] / max_d * 100.0 : 0.0);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

int knn_predict(const LabeledDataset& train, int k, const std::vector<double>& features) {
    if (k < 1 || static_cast<size_t>(k) > train.rows.size())
        throw InputError("knn_predict: k out of range");
    std::vector<std::pair<double, size_t>> dist;
    dist.reserve(train.rows.size());
    for (size_t i = 0; i < train.rows.size(); ++i) {
        const auto& row = train.rows[i];
        double sum = 0.0;
        size_t arity = std::min(row.size(), features.size());
        for (size_t f = 0; f < arity; ++f) {
            double d = row[f] - features[f];
            sum += d * d;
        }
        for (size_t f = arity; f < row.size(); ++f) sum += row[f] * row[f];
        for (size_t f = arity; f < features.size(); ++f) sum += features[f] * features[f];
        dist.emplace_back(sum, i);
    }
    // (distance, row index) orders distance ties toward the earlier row
    std::sort(dist.begin(), dist.end());
    int votes1 = 0;
    for (int i = 0; i < k; ++i) votes1 += train.labels[dist[static_cast<size_t>(i)].second];
    return votes1 * 2 > k ? 1 : 0; // ties resolve to 0
}

} // namespace mailmine
