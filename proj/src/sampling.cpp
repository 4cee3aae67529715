#include "mailmine/learn.hpp"

#include "mailmine/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mailmine {

TrainTestSplit split_train_test(const LabeledDataset& ds, double test_fraction, uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw InputError("split_train_test: test_fraction must be in (0, 1)");
    const size_t n = ds.rows.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    size_t test_n = static_cast<size_t>(
        std::llround(test_fraction * static_cast<double>(n)));
    test_n = std::min(test_n, n);

    std::vector<size_t> test_idx(order.begin(), order.begin() + static_cast<long>(test_n));
    std::vector<size_t> train_idx(order.begin() + static_cast<long>(test_n), order.end());
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    return TrainTestSplit{ds.subset(train_idx), ds.subset(test_idx)};
}

namespace {
std::pair<std::vector<size_t>, std::vector<size_t>> by_class(const LabeledDataset& ds) {
    std::vector<size_t> zeros, ones;
    for (size_t i = 0; i < ds.labels.size(); ++i)
        (ds.labels[i] ? ones : zeros).push_back(i);
    return {zeros, ones};
}
} // namespace

LabeledDataset undersample(const LabeledDataset& ds, uint64_t seed) {
    auto [zeros, ones] = by_class(ds);
    if (zeros.empty() || ones.empty())
        throw InputError("undersample: both classes must be present");
    if (zeros.size() == ones.size()) return ds;

    auto& majority = zeros.size() > ones.size() ? zeros : ones;
    auto& minority = zeros.size() > ones.size() ? ones : zeros;

    Rng rng(seed);
    rng.shuffle(majority);
    majority.resize(minority.size());

    std::vector<size_t> keep;
    keep.reserve(minority.size() * 2);
    keep.insert(keep.end(), minority.begin(), minority.end());
    keep.insert(keep.end(), majority.begin(), majority.end());
    std::sort(keep.begin(), keep.end());
    return ds.subset(keep);
}

LabeledDataset oversample(const LabeledDataset& ds, uint64_t seed) {
    auto [zeros, ones] = by_class(ds);
    if (zeros.empty() || ones.empty())
        throw InputError("oversample: both classes must be present");
    if (zeros.size() == ones.size()) return ds;

    const auto& minority = zeros.size() > ones.size() ? ones : zeros;
    const size_t deficit =
        (zeros.size() > ones.size() ? zeros.size() : ones.size()) - minority.size();

    std::vector<size_t> keep(ds.rows.size());
    for (size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    Rng rng(seed);
    for (size_t d = 0; d < deficit; ++d)
        keep.push_back(minority[static_cast<size_t>(rng.uniform_index(minority.size()))]);
    return ds.subset(keep); // originals verbatim, duplicates appended
}

double cross_validate(const LabeledDataset& ds, int folds, uint64_t seed,
                      const FitFunction& fit) {
    if (folds < 2) throw InputError("cross_validate: need at least 2 folds");
    const size_t n = ds.rows.size();
    if (n < static_cast<size_t>(folds)) throw InputError("cross_validate: more folds than rows");

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    double total_acc = 0.0;
    size_t base = n / static_cast<size_t>(folds), extra = n % static_cast<size_t>(folds), pos = 0;
    for (int f = 0; f < folds; ++f) {
        size_t len = base + (static_cast<size_t>(f) < extra ? 1 : 0);
        std::vector<size_t> test_idx(order.begin() + static_cast<long>(pos),
                                     order.begin() + static_cast<long>(pos + len));
        std::vector<size_t> train_idx;
        train_idx.reserve(n - len);
        train_idx.insert(train_idx.end(), order.begin(), order.begin() + static_cast<long>(pos));
        train_idx.insert(train_idx.end(), order.begin() + static_cast<long>(pos + len),
                         order.end());
        pos += len;
        std::sort(test_idx.begin(), test_idx.end());
        std::sort(train_idx.begin(), train_idx.end());

        auto model = fit(ds.subset(train_idx));
        size_t correct = 0;
        for (size_t i : test_idx)
            if (model(ds.rows[i]) == ds.labels[i]) ++correct;
        total_acc += static_cast<double>(correct) / static_cast<double>(len);
    }
    return total_acc / folds;
}

} // namespace mailmine
