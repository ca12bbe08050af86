#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zres/constants.hpp"
#include "zres/errors.hpp"
#include "zres/primes.hpp"
#include "zres/util.hpp"

namespace zres {

using Complex = std::complex<double>;

// Argument s = sigma + i t.
struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;

    Complex value() const { return {sigma, t}; }
};

struct EvalConfig {
    double target_abs_error = 1e-12;
    std::int64_t em_terms = 64;       // floor for the Euler-Maclaurin cutoff N
    int em_bernoulli_order = 8;       // number of Bernoulli correction terms
};

// Euler-Maclaurin is linear in |t|; beyond this height a Riemann-Siegel
// style evaluator would be needed, which is out of scope.
inline constexpr double kMaxEvalHeight = 1e7;

// The alternating-series oracle needs ~0.9*|t| terms; capped for memory.
inline constexpr double kMaxOracleHeight = 1e6;

namespace detail {

// B_{2k}/(2k)! for k = 1..13.
inline constexpr double kBernoulliOverFactorial[14] = {
    0.0,
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    854513.0 / 155112100433309859840000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    8553103.0 / 2419748766759633813504000000.0,
};

inline Complex power_term(double base, const Complex& exponent) {
    // base^exponent for base > 0.
    const double lb = std::log(base);
    const double mag = std::exp(exponent.real() * lb);
    return std::polar(mag, exponent.imag() * lb);
}

// n^{-s} for integer n >= 1.
inline Complex inv_power(double n, double sigma, double t) {
    return std::polar(std::pow(n, -sigma), -t * std::log(n));
}

inline void validate(const EvalConfig& cfg) {
    if (cfg.target_abs_error < 1e-14) {
        throw domain_error("EvalConfig: target_abs_error below the double-precision floor 1e-14");
    }
    if (cfg.em_terms < 1) {
        throw domain_error("EvalConfig: em_terms must be a positive integer");
    }
    if (cfg.em_bernoulli_order < 1 || cfg.em_bernoulli_order > 12) {
        throw domain_error("EvalConfig: em_bernoulli_order must be in [1,12]");
    }
}

// Magnitude heuristic for the first omitted Euler-Maclaurin correction.
inline double em_remainder_estimate(const Complex& s, double N, int order) {
    const int k = order + 1;
    double log_prod = 0.0;
    for (int i = 0; i <= 2 * order; ++i) log_prod += std::log(std::abs(s + static_cast<double>(i)));
    const double log_tail = std::log(std::abs(kBernoulliOverFactorial[k])) + log_prod +
                            (-s.real() - 2.0 * order - 1.0) * std::log(N) +
                            std::log(std::abs(s + (2.0 * order + 1.0)) / (s.real() + 2.0 * order + 1.0));
    return std::exp(log_tail);
}

}  // namespace detail

// Reference evaluator: Euler-Maclaurin with Bernoulli corrections. Valid for
// sigma > 0, s != 1, |t| <= kMaxEvalHeight.
inline Complex zeta(const ComplexPoint& s, const EvalConfig& cfg = {}) {
    detail::validate(cfg);
    if (s.sigma <= 0.0) {
        throw domain_error("zeta: unsupported region sigma <= 0 (no analytic continuation here)");
    }
    if (s.sigma == 1.0 && s.t == 0.0) {
        throw domain_error("zeta: pole at s = 1");
    }
    if (std::abs(s.t) > kMaxEvalHeight) {
        throw domain_error("zeta: |t| exceeds the supported height 1e7");
    }
    const Complex sc = s.value();

    std::int64_t N = std::max<std::int64_t>(cfg.em_terms,
                                            static_cast<std::int64_t>(std::ceil(2.0 * std::abs(s.t))));
    N = std::max<std::int64_t>(N, 16);
    while (detail::em_remainder_estimate(sc, static_cast<double>(N), cfg.em_bernoulli_order) >
               cfg.target_abs_error &&
           N < (std::int64_t{1} << 26)) {
        N *= 2;
    }

    CompensatedSum re, im;
    for (std::int64_t n = 1; n < N; ++n) {
        const Complex term = detail::inv_power(static_cast<double>(n), s.sigma, s.t);
        re.add(term.real());
        im.add(term.imag());
    }
    Complex sum{re.value(), im.value()};

    const double Nd = static_cast<double>(N);
    const Complex n_pow_1ms = detail::power_term(Nd, Complex{1.0, 0.0} - sc);  // N^{1-s}
    const Complex n_pow_ms = detail::inv_power(Nd, s.sigma, s.t);              // N^{-s}
    sum += n_pow_1ms / (sc - 1.0);
    sum += 0.5 * n_pow_ms;

    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
    Complex rising = sc;                      // s(s+1)...(s+2k-2), starts at k=1
    Complex n_factor = n_pow_1ms / (Nd * Nd); // N^{-s-2k+1}, starts at k=1
    for (int k = 1; k <= cfg.em_bernoulli_order; ++k) {
        sum += detail::kBernoulliOverFactorial[k] * rising * n_factor;
        rising *= (sc + (2.0 * k - 1.0)) * (sc + (2.0 * k));
        n_factor /= Nd * Nd;
    }
    return sum;
}

// Independent oracle: eta(s) via a Chebyshev-accelerated alternating series,
// evaluated in log-normalized form so the acceleration weights never overflow,
// then zeta(s) = eta(s) / (1 - 2^{1-s}).
inline Complex zeta_alternating_oracle(const ComplexPoint& s) {
    if (s.sigma <= 0.0) {
        throw domain_error("zeta_alternating_oracle: requires sigma > 0");
    }
    if (std::abs(s.t) > kMaxOracleHeight) {
        throw domain_error("zeta_alternating_oracle: |t| exceeds the supported height 1e6");
    }
    const Complex sc = s.value();
    const Complex conv = 1.0 - detail::power_term(2.0, 1.0 - sc);
    if (std::abs(conv) < 1e-12) {
        throw domain_error("zeta_alternating_oracle: conversion factor 1 - 2^{1-s} vanishes (s = 1 "
                           "or a conjugate singular point)");
    }

    const double at = std::abs(s.t);
    static const double kLogAccel = std::log(3.0 + std::sqrt(8.0));
    const int n = static_cast<int>(std::ceil(
                      (kPi / 2.0 * at + 19.0 * std::log(10.0) + std::log(3.0 * (1.0 + 2.0 * at))) /
                      kLogAccel)) +
                  10;

    // ln u_i for the acceleration weights u_i = (n+i-1)! 4^i / ((n-i)! (2i)!).
    std::vector<double> lse(static_cast<std::size_t>(n) + 1);
    {
        double ln_u = -std::log(static_cast<double>(n));
        lse[0] = ln_u;
        for (int i = 1; i <= n; ++i) {
            ln_u += std::log(4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i - 1.0) * (2.0 * i)));
            lse[static_cast<std::size_t>(i)] = ln_u;
        }
    }
    // In-place suffix log-sum-exp: lse[k] <- log sum_{i>=k} u_i.
    for (int k = n - 1; k >= 0; --k) {
        const double a = std::max(lse[static_cast<std::size_t>(k)], lse[static_cast<std::size_t>(k) + 1]);
        const double b = std::min(lse[static_cast<std::size_t>(k)], lse[static_cast<std::size_t>(k) + 1]);
        lse[static_cast<std::size_t>(k)] = a + std::log1p(std::exp(b - a));
    }
    const double total = lse[0];

    CompensatedSum re, im;
    for (int k = 0; k < n; ++k) {
        // 1 - d_k/d_n as a stable suffix/total weight ratio.
        const double frac = std::exp(lse[static_cast<std::size_t>(k) + 1] - total);
        Complex term = frac * detail::inv_power(static_cast<double>(k + 1), s.sigma, s.t);
        if (k & 1) term = -term;
        re.add(term.real());
        im.add(term.imag());
    }
    return Complex{re.value(), im.value()} / conv;
}

// Truncated Euler product zeta(s; Y) = prod_{p<=Y} (1 - p^{-s})^{-1},
// accumulated as exp(-sum Log(1 - p^{-s})) with principal-branch logarithms.
inline Complex zeta_truncated(const ComplexPoint& s, double Y, const PrimeTable& primes) {
    if (s.sigma <= 0.0) {
        throw domain_error("zeta_truncated: requires sigma > 0");
    }
    if (!(Y >= 1.0) || !std::isfinite(Y)) {
        throw domain_error("zeta_truncated: Y must be finite and >= 1, got " + std::to_string(Y));
    }
    if (static_cast<double>(primes.limit) < Y) {
        throw domain_error("zeta_truncated: prime table limit " + std::to_string(primes.limit) +
                           " is below Y = " + std::to_string(Y));
    }
    CompensatedSum re, im;
    for (std::uint64_t p : primes.primes) {
        if (static_cast<double>(p) > Y) break;
        const Complex factor = 1.0 - detail::inv_power(static_cast<double>(p), s.sigma, s.t);
        if (std::abs(factor) == 0.0) {
            throw domain_error("zeta_truncated: singular factor at p = " + std::to_string(p));
        }
        const Complex lg = std::log(factor);
        re.add(lg.real());
        im.add(lg.imag());
    }
    return std::exp(-Complex{re.value(), im.value()});
}

// sum over prime powers p^k <= y of 1/(k p^{k s}); the Lambda(n)/log n prime
// sum with Lambda(p^k) = log p substituted. Zero for y < 2.
inline Complex log_zeta_prime_sum(const ComplexPoint& s, double y, const PrimeTable& primes) {
    if (s.sigma <= 0.5) {
        throw domain_error("log_zeta_prime_sum: requires sigma > 1/2");
    }
    if (!std::isfinite(y)) throw domain_error("log_zeta_prime_sum: y must be finite");
    if (y < 2.0) return {0.0, 0.0};
    if (static_cast<double>(primes.limit) < y) {
        throw domain_error("log_zeta_prime_sum: prime table limit " + std::to_string(primes.limit) +
                           " is below y = " + std::to_string(y));
    }
    CompensatedSum re, im;
    for (std::uint64_t p : primes.primes) {
        if (static_cast<double>(p) > y) break;
        double pk = static_cast<double>(p);
        for (int k = 1; pk <= y; ++k, pk *= static_cast<double>(p)) {
            const Complex term = detail::inv_power(pk, s.sigma, s.t) / static_cast<double>(k);
            re.add(term.real());
            im.add(term.imag());
        }
    }
    return {re.value(), im.value()};
}

// prod_{j=1..ell} |zeta(sigma + i j t)| via log-magnitude accumulation.
inline double joint_harmonic_product(double sigma, double t, int ell, const EvalConfig& cfg = {}) {
    if (ell < 1) {
        throw domain_error("joint_harmonic_product: ell must be a positive integer");
    }
    if (sigma == 1.0 && t == 0.0) {
        throw domain_error("joint_harmonic_product: pole at sigma = 1, t = 0");
    }
    double log_prod = 0.0;
    for (int j = 1; j <= ell; ++j) {
        log_prod += std::log(std::abs(zeta({sigma, static_cast<double>(j) * t}, cfg)));
    }
    return std::exp(log_prod);
}

}  // namespace zres
