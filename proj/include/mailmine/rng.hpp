#pragma once

#include <cstdint>
#include <vector>

namespace mailmine {

// Deterministic splitmix64 generator. The standard <random> engines are
// portable but the distributions are not, and reports must be byte-identical
// across toolchains, so all sampling goes through this class.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n). n must be > 0.
    uint64_t uniform_index(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream, e.g. one per forest tree. Mixing the salt
    // through one splitmix step keeps sibling streams uncorrelated.
    Rng fork(uint64_t salt) const {
        Rng child(state_ ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
        child.next_u64();
        return child;
    }

private:
    uint64_t state_;
};

} // namespace mailmine
