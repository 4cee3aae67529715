#include "mailmine/learn.hpp"

#include "mailmine/errors.hpp"
#include "mailmine/tree_builder.hpp"

#include <algorithm>
#include <cmath>

namespace mailmine {

size_t LabeledDataset::count_label(int label) const {
    size_t n = 0;
    for (int l : labels)
        if (l == label) ++n;
    return n;
}

LabeledDataset LabeledDataset::subset(const std::vector<size_t>& indices) const {
    LabeledDataset out;
    out.feature_names = feature_names;
    out.positive_name = positive_name;
    out.negative_name = negative_name;
    out.rows.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (size_t i : indices) {
        out.rows.push_back(rows[i]);
        out.labels.push_back(labels[i]);
        if (!row_ids.empty()) out.row_ids.push_back(row_ids[i]);
    }
    return out;
}

double gini_impurity(int64_t c0, int64_t c1) {
    int64_t n = c0 + c1;
    if (n == 0) return 0.0;
    double p0 = static_cast<double>(c0) / static_cast<double>(n);
    double p1 = static_cast<double>(c1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

size_t DecisionTree::leaf_for(const std::vector<double>& features) const {
    size_t node = 0;
    while (!nodes[node].is_leaf()) {
        const TreeNode& nd = nodes[node];
        double v = static_cast<size_t>(nd.feature) < features.size()
                       ? features[static_cast<size_t>(nd.feature)]
                       : 0.0;
        node = static_cast<size_t>(v < nd.threshold ? nd.left : nd.right);
    }
    return node;
}

int DecisionTree::predict(const std::vector<double>& features) const {
    return nodes[leaf_for(features)].label;
}

double DecisionTree::predict_proba(const std::vector<double>& features) const {
    const TreeNode& leaf = nodes[leaf_for(features)];
    int64_t n = leaf.counts[0] + leaf.counts[1];
    if (n == 0) return 0.0;
    return static_cast<double>(leaf.counts[1]) / static_cast<double>(n);
}

namespace detail {

TreeBuilder::TreeBuilder(const LabeledDataset& ds, const CartParams& params)
    : ds_(ds), params_(params) {}

std::optional<TreeBuilder::Split> TreeBuilder::best_split(const std::vector<size_t>& rows,
                                                          const std::vector<int>& features) const {
    int64_t total0 = 0, total1 = 0;
    for (size_t r : rows) (ds_.labels[r] ? total1 : total0)++;
    const int64_t n = total0 + total1;

    std::optional<Split> best;
    std::vector<std::pair<double, int>> values;
    values.reserve(rows.size());

    for (int f : features) {
        values.clear();
        for (size_t r : rows) values.emplace_back(ds_.rows[r][static_cast<size_t>(f)],
                                                  ds_.labels[r]);
        std::sort(values.begin(), values.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        int64_t left0 = 0, left1 = 0;
        for (size_t i = 0; i + 1 < values.size(); ++i) {
            (values[i].second ? left1 : left0)++;
            if (values[i].first == values[i + 1].first) continue;
            int64_t nl = left0 + left1, nr = n - nl;
            if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
            double weighted =
                static_cast<double>(nl) * gini_impurity(left0, left1) +
                static_cast<double>(nr) * gini_impurity(total0 - left0, total1 - left1);
            double decrease = static_cast<double>(n) * gini_impurity(total0, total1) - weighted;
            // strict > keeps the lowest feature index / lowest threshold on ties
            if (!best || decrease > best->decrease) {
                best = Split{f, (values[i].first + values[i + 1].first) / 2.0, decrease};
            }
        }
    }
    return best;
}

int32_t TreeBuilder::build(std::vector<TreeNode>& nodes, std::vector<size_t>& rows, int depth,
                           double root_scale, Rng* rng, int mtry) {
    int64_t c0 = 0, c1 = 0;
    for (size_t r : rows) (ds_.labels[r] ? c1 : c0)++;

    int32_t index = static_cast<int32_t>(nodes.size());
    nodes.push_back(TreeNode{});
    nodes[static_cast<size_t>(index)].counts[0] = c0;
    nodes[static_cast<size_t>(index)].counts[1] = c1;
    nodes[static_cast<size_t>(index)].label = c1 > c0 ? 1 : 0;

    const int64_t n = c0 + c1;
    bool can_split = c0 != 0 && c1 != 0 && n >= params_.min_split && depth < params_.max_depth;
    if (!can_split) return index;

    std::optional<Split> split;
    if (rng && mtry < static_cast<int>(ds_.feature_names.size())) {
        // sample mtry distinct candidate features, ascending for determinism
        std::vector<int> all(ds_.feature_names.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        std::vector<int> chosen;
        chosen.reserve(static_cast<size_t>(mtry));
        for (int k = 0; k < mtry; ++k) {
            size_t j = static_cast<size_t>(rng->uniform_index(all.size() - static_cast<size_t>(k)));
            chosen.push_back(all[j]);
            std::swap(all[j], all[all.size() - 1 - static_cast<size_t>(k)]);
        }
        std::sort(chosen.begin(), chosen.end());
        split = best_split(rows, chosen);
    } else {
        std::vector<int> all(ds_.feature_names.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        split = best_split(rows, all);
    }
    if (!split) return index;

    // Scaled decrease must clear the complexity penalty relative to the root.
    if (root_scale > 0.0 && split->decrease / root_scale < params_.complexity_penalty)
        return index;

    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows) {
        if (ds_.rows[r][static_cast<size_t>(split->feature)] < split->threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes[static_cast<size_t>(index)].feature = split->feature;
    nodes[static_cast<size_t>(index)].threshold = split->threshold;
    int32_t left = build(nodes, left_rows, depth + 1, root_scale, rng, mtry);
    nodes[static_cast<size_t>(index)].left = left;
    int32_t right = build(nodes, right_rows, depth + 1, root_scale, rng, mtry);
    nodes[static_cast<size_t>(index)].right = right;
    return index;
}

DecisionTree TreeBuilder::train(const std::vector<size_t>& row_indices, Rng* rng, int mtry) {
    DecisionTree tree;
    tree.feature_names = ds_.feature_names;
    tree.positive_name = ds_.positive_name;
    tree.negative_name = ds_.negative_name;

    int64_t c0 = 0, c1 = 0;
    for (size_t r : row_indices) (ds_.labels[r] ? c1 : c0)++;
    double root_scale = static_cast<double>(c0 + c1) * gini_impurity(c0, c1);

    std::vector<size_t> rows = row_indices;
    build(tree.nodes, rows, 0, root_scale, rng, mtry);
    return tree;
}

} // namespace detail

DecisionTree train_cart(const LabeledDataset& ds, const CartParams& params) {
    if (ds.rows.empty()) throw InputError("train_cart: empty dataset");
    if (ds.labels.size() != ds.rows.size())
        throw InternalError("train_cart: labels misaligned with rows");
    if (params.min_leaf > params.min_split)
        throw InputError("train_cart: min_leaf must not exceed min_split");
    std::vector<size_t> all(ds.rows.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    detail::TreeBuilder builder(ds, params);
    return builder.train(all, nullptr, static_cast<int>(ds.feature_names.size()));
}

} // namespace mailmine
