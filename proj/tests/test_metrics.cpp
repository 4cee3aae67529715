#include "doctest.h"

#include "mailmine/errors.hpp"
#include "mailmine/metrics.hpp"
#include "mailmine/rng.hpp"

using namespace mailmine;

namespace {

// Independent oracle: count concordant positive/negative pairs directly.
double auroc_bruteforce(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    int64_t pairs = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace

TEST_CASE("confusion: standard counts, rows actual") {
    ConfusionMatrix cm = confusion({1, 0, 1, 0}, {1, 0, 0, 1});
    CHECK(cm.tp == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.fn == 1);
    CHECK_THROWS_AS(confusion({1}, {1, 0}), InputError);
    CHECK_THROWS_AS(confusion({}, {}), InputError);
}

TEST_CASE("confusion: perfect and inverted predictions") {
    ConfusionMatrix perfect = confusion({1, 0, 1}, {1, 0, 1});
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);
    ConfusionMatrix wrong = confusion({0, 1}, {1, 0});
    CHECK(wrong.tp == 0);
    CHECK(wrong.tn == 0);
}

TEST_CASE("confusion: label vectors reproducing the published matrix") {
    std::vector<int> predicted, actual;
    auto add = [&](int pred, int act, int count) {
        for (int i = 0; i < count; ++i) {
            predicted.push_back(pred);
            actual.push_back(act);
        }
    };
    add(1, 1, 25);  // responsive caught
    add(0, 1, 17);  // responsive missed
    add(1, 0, 20);  // non-responsive flagged
    add(0, 0, 195); // non-responsive correct
    ConfusionMatrix cm = confusion(predicted, actual);
    CHECK(cm.tp == 25);
    CHECK(cm.fn == 17);
    CHECK(cm.fp == 20);
    CHECK(cm.tn == 195);
    CHECK(cm.total() == 257);
}

TEST_CASE("derive: the published predictive-coding matrix") {
    // {tp 25, fn 17, fp 20, tn 195}: accuracy 85.60%, sensitivity 59.50%,
    // specificity 90.70%, FPR 9.30%, FNR 40.50%
    ConfusionMatrix cm{25, 20, 17, 195};
    DerivedMetrics m = derive(cm);
    CHECK(*m.accuracy == doctest::Approx(0.8560).epsilon(0.0006));
    CHECK(*m.sensitivity == doctest::Approx(0.5950).epsilon(0.0006));
    CHECK(*m.specificity == doctest::Approx(0.9070).epsilon(0.0006));
    CHECK(*m.fpr == doctest::Approx(0.0930).epsilon(0.006));
    CHECK(*m.fnr == doctest::Approx(0.4050).epsilon(0.0015));
}

TEST_CASE("derive: the insider-pay single-split matrix reaches 87%") {
    // tn 116, fp 11, fn 8, tp 10 over 145 people
    ConfusionMatrix cm{10, 11, 8, 116};
    DerivedMetrics m = derive(cm);
    CHECK(*m.accuracy == doctest::Approx(0.869).epsilon(0.001));
}

TEST_CASE("derive: zero denominators come back absent") {
    ConfusionMatrix cm{0, 0, 0, 4}; // no actual positives, no predicted positives
    DerivedMetrics m = derive(cm);
    CHECK(m.accuracy.has_value());
    CHECK(*m.accuracy == 1.0);
    CHECK_FALSE(m.sensitivity.has_value());
    CHECK_FALSE(m.fnr.has_value());
    CHECK(m.specificity.has_value());
}

TEST_CASE("derive is invariant under pair permutation") {
    std::vector<int> pred = {1, 0, 1, 1, 0, 0, 1, 0};
    std::vector<int> act = {1, 1, 0, 1, 0, 1, 0, 0};
    DerivedMetrics a = derive(confusion(pred, act));

    const std::vector<size_t> order = {5, 2, 7, 0, 3, 6, 1, 4};
    std::vector<int> pred2, act2;
    for (size_t i : order) {
        pred2.push_back(pred[i]);
        act2.push_back(act[i]);
    }
    DerivedMetrics b = derive(confusion(pred2, act2));
    CHECK(*a.accuracy == *b.accuracy);
    CHECK(*a.sensitivity == *b.sensitivity);
    CHECK(*a.specificity == *b.specificity);
}

TEST_CASE("auroc: worked examples") {
    // labels [1,0,1,0], scores [0.9,0.8,0.4,0.3]: pairs (0.9>0.8, 0.9>0.3,
    // 0.4<0.8, 0.4>0.3) -> 3 of 4 -> 0.75
    CHECK(auroc({0.9, 0.8, 0.4, 0.3}, {1, 0, 1, 0}) == doctest::Approx(0.75));
    CHECK(auroc({1.0, 0.9, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0);
    CHECK(auroc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == 0.5);
    CHECK_THROWS_AS(auroc({0.1, 0.2}, {1, 1}), InputError);
    CHECK_THROWS_AS(auroc({0.1}, {1, 0}), InputError);
}

TEST_CASE("auroc: rank form equals brute force on random inputs") {
    Rng rng(2024);
    for (int round = 0; round < 60; ++round) {
        size_t n = 2 + rng.uniform_index(198);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        bool have0 = false, have1 = false;
        for (size_t i = 0; i < n; ++i) {
            // quantized scores force plenty of ties
            scores[i] = static_cast<double>(rng.uniform_index(16)) / 15.0;
            labels[i] = rng.uniform_index(2) ? 1 : 0;
            (labels[i] ? have1 : have0) = true;
        }
        if (!have0 || !have1) {
            labels[0] = 0;
            labels[n - 1] = 1;
        }
        double fast = auroc(scores, labels);
        double slow = auroc_bruteforce(scores, labels);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
    }
}

TEST_CASE("auroc: negating tie-free scores flips the area") {
    std::vector<double> scores = {0.91, 0.82, 0.47, 0.33, 0.21, 0.10};
    std::vector<int> labels = {1, 0, 1, 0, 0, 1};
    std::vector<double> negated;
    for (double s : scores) negated.push_back(-s);
    CHECK(auroc(scores, labels) + auroc(negated, labels) == doctest::Approx(1.0));
}
