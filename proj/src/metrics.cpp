#include "mailmine/metrics.hpp"

#include "mailmine/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mailmine {

ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& actual) {
    if (predicted.size() != actual.size())
        throw InputError("confusion: predicted and actual lengths differ");
    if (predicted.empty()) throw InputError("confusion: empty input");
    ConfusionMatrix cm;
    for (size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i]) (predicted[i] ? cm.tp : cm.fn)++;
        else (predicted[i] ? cm.fp : cm.tn)++;
    }
    return cm;
}

DerivedMetrics derive(const ConfusionMatrix& cm) {
    DerivedMetrics m;
    auto ratio = [](int64_t num, int64_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    m.specificity = ratio(cm.tn, cm.tn + cm.fp);
    m.fpr = ratio(cm.fp, cm.fp + cm.tn);
    m.fnr = ratio(cm.fn, cm.tp + cm.fn);
    return m;
}

double auroc(const std::vector<double>& scores, const std::vector<int>& actual) {
    if (scores.size() != actual.size())
        throw InputError("auroc: scores and labels lengths differ");
    int64_t n_pos = 0, n_neg = 0;
    for (int a : actual) (a ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw InputError("auroc: both classes must be present");

    std::vector<size_t> order(scores.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tie groups; U = sum of positive ranks - n_pos(n_pos+1)/2.
    double rank_sum_pos = 0.0;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k)
            if (actual[order[k]]) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

} // namespace mailmine
