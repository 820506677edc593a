#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace coordscan {

// Every random draw in the project goes through one of these helpers on a
// mt19937_64 stream, so a run is reproducible from the single recorded seed.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 bits.
inline double rand_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n > 0. Modulo bias is irrelevant at corpus scale.
inline std::uint64_t rand_index(Rng& rng, std::uint64_t n) {
    return rng() % n;
}

// Uniform integer in [lo, hi).
inline std::int64_t rand_range(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rand_index(rng, static_cast<std::uint64_t>(hi - lo)));
}

// Knuth's product method. Lambdas stay small here (posts per account).
inline std::uint64_t rand_poisson(Rng& rng, double lambda) {
    const double limit = std::exp(-lambda);
    double product = 1.0;
    std::uint64_t count = 0;
    while (true) {
        product *= rand_unit(rng);
        if (product <= limit) return count;
        ++count;
    }
}

// Fisher-Yates, driven by the shared stream.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rand_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Zipf over ranks 0..n-1 with exponent s, sampled through a precomputed CDF.
class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            total += std::pow(static_cast<double>(k + 1), -exponent);
            cdf_[k] = total;
        }
        for (auto& c : cdf_) c /= total;
    }

    std::size_t sample(Rng& rng) const {
        const double u = rand_unit(rng);
        std::size_t lo = 0, hi = cdf_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf_[mid] < u) lo = mid + 1; else hi = mid;
        }
        return lo;
    }

private:
    std::vector<double> cdf_;
};

// One-off Zipf draw over ranks 0..n-1 without a table (n varies per call site).
inline std::size_t rand_zipf(Rng& rng, std::size_t n, double exponent) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += std::pow(static_cast<double>(k + 1), -exponent);
    double u = rand_unit(rng) * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += std::pow(static_cast<double>(k + 1), -exponent);
        if (u < acc) return k;
    }
    return n - 1;
}

} // namespace coordscan
