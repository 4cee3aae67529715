#include "mailmine/benford.hpp"

#include <cmath>

namespace mailmine {

int first_digit(double x) {
    if (!std::isfinite(x) || x <= 0.0) return 0;
    while (x < 1.0) x *= 10.0;
    while (x >= 10.0) x /= 10.0;
    return static_cast<int>(x);
}

std::array<double, 9> benford_expected() {
    std::array<double, 9> p{};
    for (int d = 1; d <= 9; ++d)
        p[static_cast<size_t>(d - 1)] = std::log10(1.0 + 1.0 / static_cast<double>(d));
    return p;
}

ConformityReport conformity(const std::vector<double>& values) {
    ConformityReport report;
    for (double v : values) {
        int d = first_digit(v);
        if (d == 0) continue;
        report.distribution.counts[static_cast<size_t>(d - 1)]++;
        report.distribution.n++;
    }
    const int64_t n = report.distribution.n;
    if (n > 0)
        for (size_t i = 0; i < 9; ++i)
            report.distribution.freq[i] =
                static_cast<double>(report.distribution.counts[i]) / static_cast<double>(n);

    if (n < 100) {
        report.verdict = "insufficient";
        return report;
    }

    const auto expected = benford_expected();
    double chi = 0.0, mad = 0.0;
    for (size_t i = 0; i < 9; ++i) {
        double exp_count = expected[i] * static_cast<double>(n);
        double diff = static_cast<double>(report.distribution.counts[i]) - exp_count;
        chi += diff * diff / exp_count;
        mad += std::fabs(report.distribution.freq[i] - expected[i]);
    }
    report.chi_square = chi;
    report.mad = mad / 9.0;

    // Nigrini's audit bands for first-digit MAD.
    if (report.mad <= 0.006) report.verdict = "close";
    else if (report.mad <= 0.012) report.verdict = "acceptable";
    else if (report.mad <= 0.015) report.verdict = "marginal";
    else report.verdict = "nonconforming";
    return report;
}

} // namespace mailmine
