#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mailmine {

// Rows are actual, columns predicted; positive = responsive / POI.
struct ConfusionMatrix {
    int64_t tp = 0;
    int64_t fp = 0;
    int64_t fn = 0;
    int64_t tn = 0;

    int64_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& actual);

// Rates with zero denominators come back empty rather than NaN.
struct DerivedMetrics {
    std::optional<double> accuracy;
    std::optional<double> sensitivity; // tp / (tp + fn)
    std::optional<double> specificity; // tn / (tn + fp)
    std::optional<double> fpr;         // fp / (fp + tn)
    std::optional<double> fnr;         // fn / (tp + fn)
};

DerivedMetrics derive(const ConfusionMatrix& cm);

// Mann-Whitney rank form: U / (n_pos * n_neg), score ties counting half.
// Throws unless both classes are present.
double auroc(const std::vector<double>& scores, const std::vector<int>& actual);

} // namespace mailmine
