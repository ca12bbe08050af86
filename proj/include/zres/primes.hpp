#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zres/constants.hpp"
#include "zres/errors.hpp"

namespace zres {

// Largest sieve bound accepted by default. pi(1e8) primes occupy ~46 MB.
inline constexpr std::uint64_t kSieveLimitCeiling = 100'000'000;

// Ascending list of all primes <= limit. Immutable after construction and
// safe to share across threads.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;

    std::size_t count() const { return primes.size(); }
};

// Segmented sieve of Eratosthenes. segment_size is in numbers per segment;
// the default keeps the working set inside L2.
inline PrimeTable sieve_primes(std::uint64_t limit,
                               std::uint64_t memory_budget = kSieveLimitCeiling,
                               std::size_t segment_size = 1u << 18) {
    if (limit < 1) {
        throw domain_error("sieve_primes: limit must be >= 1, got " + std::to_string(limit));
    }
    if (segment_size < 1) {
        throw domain_error("sieve_primes: segment_size must be >= 1");
    }
    if (limit > memory_budget) {
        throw domain_error("sieve_primes: limit " + std::to_string(limit) +
                           " exceeds the memory budget of " + std::to_string(memory_budget));
    }
    PrimeTable table;
    table.limit = limit;
    if (limit < 2) return table;

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<char> small(root + 1, 1);
    for (std::uint64_t i = 2; i * i <= root; ++i) {
        if (!small[i]) continue;
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    }
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (small[i]) base.push_back(i);
    }

    table.primes.reserve(limit > 100 ? static_cast<std::size_t>(
                                           1.2 * static_cast<double>(limit) /
                                           std::log(static_cast<double>(limit)))
                                     : 32);
    std::vector<char> segment(segment_size);
    for (std::uint64_t low = 2; low <= limit; low += segment_size) {
        const std::uint64_t high = std::min<std::uint64_t>(low + segment_size - 1, limit);
        std::fill(segment.begin(), segment.end(), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n) {
            if (segment[n - low]) table.primes.push_back(n);
        }
    }
    return table;
}

struct MertensResult {
    double product = 1.0;  // prod_{p<=X} p/(p-1)
    double ratio = 0.0;    // product / (e^gamma * log X)
};

// Factor count above which prime products switch to log-space accumulation.
inline constexpr std::size_t kLogSpaceProductThreshold = 10'000;

// prod_{p<=X} p/(p-1) together with its ratio to the Mertens asymptote
// e^gamma log X. Factors are consumed in ascending-prime order.
inline MertensResult mertens_ratio(double X, const PrimeTable& primes) {
    if (!(X >= 2.0) || !std::isfinite(X)) {
        throw domain_error("mertens_ratio: X must be finite and >= 2 (empty product), got " +
                           std::to_string(X));
    }
    if (static_cast<double>(primes.limit) < X) {
        throw domain_error("mertens_ratio: prime table limit " + std::to_string(primes.limit) +
                           " is below X = " + std::to_string(X));
    }
    std::size_t n_factors = 0;
    for (std::uint64_t p : primes.primes) {
        if (static_cast<double>(p) > X) break;
        ++n_factors;
    }
    MertensResult out;
    if (n_factors > kLogSpaceProductThreshold) {
        double log_prod = 0.0;
        for (std::size_t i = 0; i < n_factors; ++i) {
            const double p = static_cast<double>(primes.primes[i]);
            log_prod += std::log(p / (p - 1.0));
        }
        out.product = std::exp(log_prod);
    } else {
        double prod = 1.0;
        for (std::size_t i = 0; i < n_factors; ++i) {
            const double p = static_cast<double>(primes.primes[i]);
            prod *= p / (p - 1.0);
        }
        out.product = prod;
    }
    out.ratio = out.product / (kExpEulerGamma * std::log(X));
    return out;
}

}  // namespace zres
