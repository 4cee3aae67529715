#pragma once

#include "mailmine/learn.hpp"

#include <optional>

namespace mailmine::detail {

// Shared recursive splitter behind train_cart and train_forest. A null rng
// (or mtry covering every feature) means deterministic full-feature search.
class TreeBuilder {
public:
    TreeBuilder(const LabeledDataset& ds, const CartParams& params);

    DecisionTree train(const std::vector<size_t>& row_indices, Rng* rng, int mtry);

    struct Split {
        int feature;
        double threshold;
        double decrease; // n * gini(node) - sum of child-weighted ginis
    };

private:
    std::optional<Split> best_split(const std::vector<size_t>& rows,
                                    const std::vector<int>& features) const;
    int32_t build(std::vector<TreeNode>& nodes, std::vector<size_t>& rows, int depth,
                  double root_scale, Rng* rng, int mtry);

    const LabeledDataset& ds_;
    const CartParams& params_;
};

} // namespace mailmine::detail
