#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mailmine {

struct DigitDistribution {
    std::array<int64_t, 9> counts{}; // digits 1..9
    int64_t n = 0;                   // usable values; <= 0 and non-finite excluded
    std::array<double, 9> freq{};    // counts / n, zeros when n == 0
};

// Leading significant decimal digit, scale-free (0.042 -> 4).
// Returns 0 for values that carry no digit (x <= 0, NaN, infinity).
int first_digit(double x);

// p(d) = log10(1 + 1/d)
std::array<double, 9> benford_expected();

struct ConformityReport {
    DigitDistribution distribution;
    double chi_square = 0.0; // against expected counts, 8 degrees of freedom
    double mad = 0.0;        // mean |freq - expected| over the nine digits
    std::string verdict;     // close / acceptable / marginal / nonconforming /
                             // insufficient (fewer than 100 usable values)
};

ConformityReport conformity(const std::vector<double>& values);

} // namespace mailmine
