#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zres/errors.hpp"
#include "zres/primes.hpp"
#include "zres/resonator.hpp"

namespace zres {

// The short-Euler-product lower bound for I2/I1 on the 1-line, split into the
// Mertens part P1 = (prod p/(p-1))^ell and the correction
// P2 = prod_j prod_p (p-1)/(p - r(p)^j).
struct RatioBreakdown {
    double p1 = 1.0;
    double p2 = 1.0;
    double product = 1.0;
    std::vector<double> per_j_factors;  // per_j[j-1] = prod_p (1 - r(p)^j/p)^{-1}
};

inline RatioBreakdown ratio_lower_bound_line(double X, int ell, const PrimeTable& primes) {
    if (ell < 1) throw domain_error("ratio_lower_bound_line: ell must be a positive integer");
    if (!std::isfinite(X)) throw domain_error("ratio_lower_bound_line: X must be finite");
    RatioBreakdown out;
    out.per_j_factors.assign(static_cast<std::size_t>(ell), 1.0);
    if (X < 2.0) return out;
    if (static_cast<double>(primes.limit) < X) {
        throw domain_error("ratio_lower_bound_line: prime table limit " +
                           std::to_string(primes.limit) + " is below X = " + std::to_string(X));
    }

    std::vector<double> p_vals, r_vals;
    for (std::uint64_t p : primes.primes) {
        const double pd = static_cast<double>(p);
        if (pd > X) break;
        p_vals.push_back(pd);
        r_vals.push_back(1.0 - pd / X);
    }
    const bool log_space = static_cast<std::size_t>(ell) * p_vals.size() > kLogSpaceProductThreshold;

    double log_p1 = 0.0, p1 = 1.0;
    for (double p : p_vals) {
        log_p1 += std::log(p / (p - 1.0));
        p1 *= p / (p - 1.0);
    }

    double log_p2_total = 0.0, p2 = 1.0, product = 1.0;
    for (int j = 1; j <= ell; ++j) {
        double log_per_j = 0.0, per_j = 1.0, per_j_p2 = 1.0;
        for (std::size_t i = 0; i < p_vals.size(); ++i) {
            const double rj = std::pow(r_vals[i], static_cast<double>(j));
            const double factor = 1.0 / (1.0 - rj / p_vals[i]);
            log_per_j += std::log(factor);
            per_j *= factor;
            per_j_p2 *= (p_vals[i] - 1.0) / (p_vals[i] - rj);
            log_p2_total += std::log((p_vals[i] - 1.0) / (p_vals[i] - rj));
        }
        out.per_j_factors[static_cast<std::size_t>(j) - 1] =
            log_space ? std::exp(log_per_j) : per_j;
        product *= per_j;
        p2 *= per_j_p2;
    }

    if (log_space) {
        out.p1 = std::exp(static_cast<double>(ell) * log_p1);
        out.p2 = std::exp(log_p2_total);
        out.product = 1.0;
        for (double f : out.per_j_factors) out.product *= f;
    } else {
        out.p1 = std::pow(p1, static_cast<double>(ell));
        out.p2 = p2;
        out.product = product;
    }

    const double cross = out.p1 * out.p2;
    if (std::abs(cross - out.product) > 1e-9 * std::abs(out.product)) {
        throw consistency_error("ratio_lower_bound_line: P1*P2 and the per-j product disagree "
                                "beyond 1e-9 relative");
    }
    return out;
}

// Critical-strip analogue: I2/I1 >= sum_{j<=ell} sum_{p<=X} r(p)^j p^{-sigma}.
inline double ratio_lower_bound_strip(const ResonatorSpec& spec, int ell,
                                      const PrimeTable& primes) {
    if (spec.mode != ResonatorMode::Strip) {
        throw domain_error("ratio_lower_bound_strip: spec.mode must be Strip");
    }
    if (ell < 0) throw domain_error("ratio_lower_bound_strip: ell must be >= 0");
    if (ell == 0 || spec.X < 2.0) return 0.0;
    const ResonatorTable table = build_resonator(spec, primes);
    double total = 0.0;
    for (int j = 1; j <= ell; ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < table.size(); ++i) {
            inner += std::pow(table.r[i], static_cast<double>(j)) *
                     std::pow(static_cast<double>(table.primes[i]), -spec.sigma);
        }
        total += inner;
    }
    return total;
}

}  // namespace zres
