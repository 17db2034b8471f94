#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gslope {

// Deterministic random source. All randomness in the library flows through
// this wrapper so that a master seed reproduces a whole experiment; sub-seeds
// for independent tasks are derived with `derive`.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    // Inclusive bounds.
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    std::vector<double> normal_vec(std::size_t n) {
        std::vector<double> out(n);
        for (auto& x : out) x = normal();
        return out;
    }

    // k distinct values from {0,...,n-1}, order not meaningful.
    std::vector<int> sample_without_replacement(int n, int k);

    // SplitMix64-style hash of (master, a, b); independent streams per task.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace gslope
