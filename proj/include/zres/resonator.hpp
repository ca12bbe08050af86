#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zres/errors.hpp"
#include "zres/primes.hpp"

namespace zres {

enum class ResonatorMode { LineOne, Strip };

// Parameters of the completely multiplicative resonator. sigma is used only
// in Strip mode; kappa and beta are bookkeeping carried into reports.
struct ResonatorSpec {
    ResonatorMode mode = ResonatorMode::LineOne;
    double X = 2.0;
    double sigma = 0.75;
    double kappa = 0.0;
    double beta = 0.0;
};

// Realized coefficients r(p) for all primes p <= X, ascending. X < 2 is the
// degenerate constant resonator R == 1 (no coefficients).
struct ResonatorTable {
    ResonatorSpec spec;
    std::vector<std::uint64_t> primes;
    std::vector<double> r;
    std::vector<double> log_p;

    std::size_t size() const { return primes.size(); }

    // r(p) for a prime p; zero for p > X or p not in the table.
    double r_at_prime(std::uint64_t p) const {
        auto it = std::lower_bound(primes.begin(), primes.end(), p);
        if (it == primes.end() || *it != p) return 0.0;
        return r[static_cast<std::size_t>(it - primes.begin())];
    }
};

inline ResonatorTable build_resonator(const ResonatorSpec& spec, const PrimeTable& primes) {
    if (spec.mode == ResonatorMode::Strip && !(spec.sigma > 0.5 && spec.sigma < 1.0)) {
        throw domain_error("build_resonator: Strip mode requires sigma in (1/2, 1), got " +
                           std::to_string(spec.sigma));
    }
    if (!std::isfinite(spec.X) || spec.X < 0.0) {
        throw domain_error("build_resonator: X must be finite and >= 0, got " +
                           std::to_string(spec.X));
    }
    ResonatorTable table;
    table.spec = spec;
    if (spec.X < 2.0) return table;
    if (static_cast<double>(primes.limit) < spec.X) {
        throw domain_error("build_resonator: prime table limit " + std::to_string(primes.limit) +
                           " is below X = " + std::to_string(spec.X));
    }
    for (std::uint64_t p : primes.primes) {
        const double pd = static_cast<double>(p);
        if (pd > spec.X) break;
        const double rp = spec.mode == ResonatorMode::LineOne
                              ? 1.0 - pd / spec.X
                              : 1.0 - std::pow(pd / spec.X, spec.sigma);
        table.primes.push_back(p);
        table.r.push_back(rp);
        table.log_p.push_back(std::log(pd));
    }
    return table;
}

// log |R(t)| = -sum_{p<=X} log |1 - r(p) p^{it}|, with the modulus expanded as
// sqrt(1 - 2 r cos(t log p) + r^2).
inline double log_resonator_abs(const ResonatorTable& table, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double r = table.r[i];
        const double c = std::cos(t * table.log_p[i]);
        acc += std::log(1.0 - 2.0 * r * c + r * r);
    }
    return -0.5 * acc;
}

// sup_t log |R(t)| = sum_{p<=X} log(1/(1 - r(p))), attained at t = 0.
// For LineOne coefficients this equals sum log(X/p).
inline double resonator_sup(const ResonatorTable& table) {
    double acc = 0.0;
    for (double r : table.r) acc += std::log1p(-r);
    return -acc;
}

// sum_n r(n)^2 over all n >= 1, via the Euler product prod 1/(1 - r(p)^2).
inline double resonator_l2_mass(const ResonatorTable& table) {
    double log_acc = 0.0;
    for (double r : table.r) log_acc += std::log1p(-r * r);
    return std::exp(-log_acc);
}

// r(n) by complete multiplicativity: factor n over the table primes; any
// factor outside the table makes the value 0.
inline double r_of_n(const ResonatorTable& table, std::uint64_t n) {
    if (n == 0) throw domain_error("r_of_n: n must be >= 1");
    double value = 1.0;
    std::uint64_t rest = n;
    for (std::size_t i = 0; i < table.size() && rest > 1; ++i) {
        const std::uint64_t p = table.primes[i];
        if (p * p > rest) break;
        while (rest % p == 0) {
            rest /= p;
            value *= table.r[i];
        }
    }
    if (rest > 1) {
        // rest is either prime or a product of primes beyond the table; both
        // cases are handled by the lookup (absent prime -> 0).
        value *= table.r_at_prime(rest);
    }
    return value;
}

}  // namespace zres
