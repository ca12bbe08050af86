#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zres/bounds.hpp"
#include "zres/constants.hpp"
#include "zres/moments.hpp"
#include "zres/primes.hpp"
#include "zres/ratio_bounds.hpp"
#include "zres/report_json.hpp"
#include "zres/resonator.hpp"
#include "zres/search.hpp"
#include "zres/zeta.hpp"

namespace zres::verify {

struct CheckResult {
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Check {
    int criterion = 0;  // 0 = suite-only check
    std::string name;
    std::string suite;  // oracles | identities | trends
    std::function<CheckResult()> run;
    double runtime_budget_s = 0.0;  // 0 = no budget clause
};

namespace detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

// 1. Dual zeta evaluators agree on the sigma x t grid.
inline CheckResult check_dual_zeta() {
    const double sigmas[] = {0.6, 0.75, 1.0, 2.0};
    const double ts[] = {0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0};
    double worst = 0.0;
    std::string at;
    for (double sg : sigmas) {
        for (double t : ts) {
            if (sg == 1.0 && t == 0.0) continue;
            const Complex a = zeta({sg, t});
            const Complex b = zeta_alternating_oracle({sg, t});
            const double err = std::abs(a - b) / std::max(1.0, std::abs(a));
            if (err > worst) {
                worst = err;
                at = "s=" + detail::fmt(sg) + "+" + detail::fmt(t) + "i";
            }
        }
    }
    return {worst <= 1e-10, worst, 1e-10, "max disagreement at " + at};
}

// 2. Forced constants zeta(2), zeta(4).
inline CheckResult check_forced_constants() {
    const double z2 = std::abs(zeta({2.0, 0.0}).real() - kPi * kPi / 6.0);
    const double z4 = std::abs(zeta({4.0, 0.0}).real() - kPi * kPi * kPi * kPi / 90.0);
    const double worst = std::max(z2, z4);
    return {worst <= 1e-12, worst, 1e-12,
            "zeta(2) dev=" + detail::fmt(z2) + ", zeta(4) dev=" + detail::fmt(z4)};
}

// 3. Truncated-product relative error trend at sigma = 1.
inline CheckResult check_truncation_trend() {
    const PrimeTable primes = sieve_primes(100000);
    double worst_step_ratio = 0.0;  // successive err ratios; > 1 breaks monotonicity
    double worst_final = 0.0;
    std::ostringstream detail_ss;
    for (double t : {1e3, 1e4, 1e5}) {
        const Complex z = zeta({1.0, t});
        std::vector<double> errs;
        for (double Y : {1e2, 1e3, 1e4, 1e5}) {
            const Complex zy = zeta_truncated({1.0, t}, Y, primes);
            errs.push_back(std::abs(zy - z) / std::abs(z));
        }
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            worst_step_ratio = std::max(worst_step_ratio, errs[i + 1] / errs[i]);
        }
        worst_final = std::max(worst_final, errs.back());
        detail_ss << "t=" << detail::fmt(t) << ": ";
        for (double e : errs) detail_ss << detail::fmt(e) << " ";
    }
    const bool pass = worst_step_ratio <= 1.0 && worst_final <= 5e-2;
    return {pass, worst_step_ratio, 1.0,
            "worst successive err ratio (<=1 means nonincreasing); final err max " +
                detail::fmt(worst_final) + " (<=0.05); " + detail_ss.str()};
}

// 4. Mertens product over primes up to 1e6.
inline CheckResult check_mertens_value() {
    const PrimeTable primes = sieve_primes(1000000);
    const MertensResult m = mertens_ratio(1e6, primes);
    const double dev = std::abs(m.ratio - 1.0);
    return {dev <= 0.01, dev, 0.01, "product=" + detail::fmt(m.product) +
                                        " ratio=" + detail::fmt(m.ratio)};
}

// 5. c(sigma): dual-route agreement, pinned value, monotone decrease.
inline CheckResult check_c_sigma() {
    double worst = 0.0;
    bool monotone = true;
    double prev = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double sg = 0.55 + 0.05 * i;
        const double series = c_sigma_series(sg);
        const double quad = c_sigma_quadrature(sg);
        worst = std::max(worst, std::abs(series - quad));
        if (i > 0 && series >= prev) monotone = false;
        prev = series;
    }
    // Independent re-derivation of c(3/4): plain partial sums of 2^-k/(1+3k/4).
    double independent = 0.0;
    for (int k = 60; k >= 1; --k) independent += std::pow(0.5, k) / (1.0 + 0.75 * k);
    const double pinned_dev = std::abs(c_sigma(0.75) - 0.45150);
    const double oracle_dev = std::abs(c_sigma(0.75) - independent);
    const bool pass = worst <= 1e-10 && pinned_dev <= 1e-4 && oracle_dev <= 1e-12 && monotone;
    return {pass, worst, 1e-10,
            "max series-quadrature gap; c(0.75) dev from 0.45150 = " + detail::fmt(pinned_dev) +
                "; monotone=" + (monotone ? "yes" : "no")};
}

// 6. S(sigma, ell): the two printed forms, positivity, pinned values.
inline CheckResult check_s_constant() {
    double worst_rel = 0.0;
    bool positive = true;
    for (int i = 0; i <= 8; ++i) {
        const double sg = 0.55 + 0.05 * i;
        for (int ell = 1; ell <= 20; ++ell) {
            const SConstantForms f = s_constant_forms(sg, ell);
            const double rel = std::abs(f.direct - f.collapsed) /
                               std::max(std::abs(f.direct), std::abs(f.collapsed));
            worst_rel = std::max(worst_rel, rel);
            if (!(f.direct > 0.0)) positive = false;
        }
    }
    const double s1_dev = std::abs(s_constant(0.75, 1) - 3.0);
    const double s2_expected = 8.0 - 3.0 + 1.0 / 1.75;  // re-derived three-term form
    const double s2_dev = std::abs(s_constant(0.75, 2) - s2_expected);
    const bool pass = worst_rel <= 1e-12 && positive && s1_dev <= 1e-12 && s2_dev <= 1e-6;
    return {pass, worst_rel, 1e-12,
            "max two-form rel gap; S(0.75,1) dev=" + detail::fmt(s1_dev) +
                "; S(0.75,2) dev=" + detail::fmt(s2_dev) + "; positive=" +
                (positive ? "yes" : "no")};
}

// 7. Hockey-stick identity in exact integer arithmetic.
inline CheckResult check_hockey_stick() {
    int failures = 0;
    for (unsigned ell = 1; ell <= 30; ++ell) {
        for (unsigned m = 1; m <= ell; ++m) {
            std::uint64_t lhs = 0;
            for (unsigned j = m; j <= ell; ++j) lhs += binomial_exact(j, m);
            if (lhs != binomial_exact(ell + 1, m + 1)) ++failures;
        }
    }
    return {failures == 0, static_cast<double>(failures), 0.0,
            "identity failures over 1<=m<=ell<=30"};
}

// 8. Moment quadrature vs the Fourier-side double-sum oracle.
inline CheckResult check_moment_oracle() {
    const PrimeTable primes = sieve_primes(16);
    double worst = 0.0;
    std::string at;
    for (double X : {6.0, 10.0}) {
        const ResonatorTable table = build_resonator({ResonatorMode::LineOne, X}, primes);
        const std::uint64_t n_max = choose_double_sum_n_max(table);
        for (double T : {1e3, 1e4}) {
            const KernelSpec kernel = kernel_for_height(T);
            const MomentEstimate q =
                moment_quadrature(table, T, kernel, std::nullopt, MomentObjective::one());
            const MomentEstimate s = moment_double_sum_oracle(table, T, kernel, n_max);
            const double rel = std::abs(q.value.real() - s.value.real()) / s.value.real();
            if (rel > worst) {
                worst = rel;
                at = "X=" + detail::fmt(X) + ", T=" + detail::fmt(T);
            }
        }
    }
    return {worst <= 0.01, worst, 0.01, "max quadrature/double-sum gap at " + at};
}

// 9. Positivity-discard chain |I2| >= 0.95 * I1 * (Euler-product bound).
inline CheckResult check_positivity_chain() {
    const double X = 10.0, T = 1e4;
    const PrimeTable primes = sieve_primes(16);
    const ResonatorTable table = build_resonator({ResonatorMode::LineOne, X}, primes);
    const KernelSpec kernel = kernel_for_height(T);
    const MomentEstimate i1 =
        moment_quadrature(table, T, kernel, std::nullopt, MomentObjective::one());
    double worst = std::numeric_limits<double>::infinity();
    std::ostringstream detail_ss;
    for (int ell : {1, 2}) {
        const MomentEstimate i2 = moment_quadrature(
            table, T, kernel, std::nullopt, MomentObjective::joint_zeta(ell, 1.0, X), {}, &primes);
        const RatioBreakdown bound = ratio_lower_bound_line(X, ell, primes);
        const double margin = std::abs(i2.value) / (bound.product * i1.value.real());
        worst = std::min(worst, margin);
        detail_ss << "ell=" << ell << ": |I2|/(bound*I1)=" << detail::fmt(margin) << " ";
    }
    return {worst >= 0.95, worst, 0.95, detail_ss.str()};
}

// 10. P1 * P2 decomposition identity.
inline CheckResult check_decomposition() {
    const double X = 10.0;
    const PrimeTable primes = sieve_primes(16);
    const MertensResult mertens = mertens_ratio(X, primes);
    double worst = 0.0;
    for (int ell : {1, 2, 3}) {
        const RatioBreakdown b = ratio_lower_bound_line(X, ell, primes);
        double per_j = 1.0;
        for (double f : b.per_j_factors) per_j *= f;
        worst = std::max(worst, std::abs(b.p1 * b.p2 - b.product) / b.product);
        worst = std::max(worst, std::abs(per_j - b.product) / b.product);
        worst = std::max(worst,
                         std::abs(b.p1 - std::pow(mertens.product, ell)) / b.p1);
    }
    return {worst <= 1e-12, worst, 1e-12, "max relative defect over ell in {1,2,3}"};
}

// 11. P2 -> 1 trend along the X = (log T log_2 T)/6 coupling.
inline CheckResult check_p2_trend() {
    const PrimeTable primes = sieve_primes(64);
    std::vector<double> p2s;
    std::ostringstream detail_ss;
    for (double log10T : {8.0, 16.0, 32.0}) {
        const double logT = log10T * std::log(10.0);
        const double X = logT * std::log(logT) / 6.0;
        const RatioBreakdown b = ratio_lower_bound_line(X, 1, primes);
        p2s.push_back(b.p2);
        detail_ss << "T=1e" << detail::fmt(log10T) << ": X=" << detail::fmt(X)
                  << " P2=" << detail::fmt(b.p2) << " ";
    }
    const bool increasing = p2s[0] < p2s[1] && p2s[1] < p2s[2];
    const bool pass = increasing && p2s.back() >= 0.9;
    return {pass, p2s.back(), 0.9,
            std::string("final P2 (>=0.9 required); increasing=") +
                (increasing ? "yes" : "no") + "; " + detail_ss.str()};
}

// 12. kappa_max pinned values and RH >= unconditional on the grid.
inline CheckResult check_kappa_max() {
    const double dev_uncond = std::abs(kappa_max(0.75, 0.5, false) - 0.16702);
    const double dev_rh = std::abs(kappa_max(0.75, 0.5, true) - 0.45930);
    bool rh_dominates = true;
    for (int i = 0; i <= 8; ++i) {
        const double sg = 0.55 + 0.05 * i;
        for (int bi = 1; bi <= 9; ++bi) {
            const double beta = 0.1 * bi;
            if (kappa_max(sg, beta, true) < kappa_max(sg, beta, false)) rh_dominates = false;
        }
    }
    const double worst = std::max(dev_uncond, dev_rh);
    const bool pass = worst <= 1e-3 && rh_dominates;
    return {pass, worst, 1e-3,
            "uncond dev=" + detail::fmt(dev_uncond) + ", RH dev=" + detail::fmt(dev_rh) +
                ", RH>=uncond on grid: " + (rh_dominates ? "yes" : "no")};
}

// 13. Theorem bound evaluators against re-derived arithmetic.
inline CheckResult check_theorem_values() {
    const TheoremBound b1 = thm1_bound(1e6, 2);
    // Independent iterated-log composition.
    const double l2 = std::log(std::log(1e6));
    const double l3 = std::log(l2);
    const double expected1 = std::exp(2.0 * kEulerGamma) * (l2 * l2 + 2.0 * l2 * l3);
    const double dev_pinned1 = std::abs(b1.value - 37.96);
    const double dev_oracle1 = std::abs(b1.value - expected1);

    const TheoremBound b2 = thm2_exponent(1e6, 0.75, 1, 0.5, 0.167);
    const double expected2 =
        std::pow(0.167, 0.25) * 3.0 * std::pow(std::log(1e6), 0.25) / std::pow(l2, 0.75);
    const double dev_pinned2 = std::abs(b2.exponent - 1.793);
    const double dev_oracle2 = std::abs(b2.exponent - expected2);

    const bool pass =
        dev_pinned1 <= 0.05 && dev_oracle1 <= 1e-9 && dev_pinned2 <= 0.005 && dev_oracle2 <= 1e-9;
    return {pass, std::max(dev_pinned1, dev_pinned2), 0.05,
            "thm1(1e6,2)=" + detail::fmt(b1.value) + " (dev " + detail::fmt(dev_pinned1) +
                "), thm2 exponent=" + detail::fmt(b2.exponent) + " (dev " +
                detail::fmt(dev_pinned2) + ")"};
}

// 14. Search pipeline vs an independent replay; byte-identical reports.
inline CheckResult check_search_replay() {
    SearchConfig cfg;
    cfg.T = 1e4;
    cfg.beta = 0.5;
    cfg.sigma = 1.0;
    cfg.ell = 1;
    cfg.grid_step = 0.01;
    const ExtremeValueReport report = run_search(cfg);
    const ExtremeValueReport report2 = run_search(cfg);
    const bool byte_identical = to_json(report).dump() == to_json(report2).dump();

    // Replay: brute-force scan of the same grid, same candidate policy,
    // fresh golden-section code.
    const double lo = std::pow(cfg.T, cfg.beta), hi = cfg.T, h = 0.01;
    const PrimeTable primes = sieve_primes(64);
    std::vector<double> rv, lp;
    for (std::uint64_t p : primes.primes) {
        if (static_cast<double>(p) > cfg.X) break;
        rv.push_back(1.0 - static_cast<double>(p) / cfg.X);
        lp.push_back(std::log(static_cast<double>(p)));
    }
    auto guidance = [&](double t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rv.size(); ++i) {
            acc += std::log(std::abs(1.0 - rv[i] * std::polar(1.0, t * lp[i])));
        }
        return -acc;
    };
    const auto n_points = static_cast<std::int64_t>(std::floor((hi - lo) / h + 1e-9)) + 1;
    std::vector<std::pair<double, double>> best;  // (score, -t) max-heap semantics via sort
    best.reserve(static_cast<std::size_t>(n_points));
    for (std::int64_t i = 0; i < n_points; ++i) {
        const double t = lo + static_cast<double>(i) * h;
        best.emplace_back(guidance(t), -t);
    }
    std::partial_sort(best.begin(), best.begin() + cfg.top_k, best.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second > b.second;  // smaller t wins
                      });
    double best_joint = -1.0, best_t = 0.0;
    for (int i = 0; i < cfg.top_k; ++i) {
        const double t = -best[static_cast<std::size_t>(i)].second;
        const double j = joint_harmonic_product(cfg.sigma, t, cfg.ell, cfg.eval);
        if (j > best_joint || (j == best_joint && t < best_t)) {
            best_joint = j;
            best_t = t;
        }
    }
    auto objective = [&](double t) {
        return std::log(joint_harmonic_product(cfg.sigma, t, cfg.ell, cfg.eval));
    };
    double a = std::max(lo, best_t - h), b = std::min(hi, best_t + h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double replay_t = best_t, replay_v = std::log(best_joint);
    auto consider = [&](double t, double v) {
        if (v > replay_v) {
            replay_v = v;
            replay_t = t;
        }
    };
    consider(a, objective(a));
    consider(b, objective(b));
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = objective(c), fd = objective(d);
    consider(c, fc);
    consider(d, fd);
    while (b - a > cfg.refine_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
            consider(d, fd);
        }
    }
    const double replay_value = std::exp(replay_v);
    const double dev = std::abs(report.value - replay_value) / std::max(1.0, replay_value);
    const bool pass = dev <= 1e-9 && byte_identical;
    return {pass, dev, 1e-9,
            "search value=" + detail::fmt(report.value) + " replay=" + detail::fmt(replay_value) +
                " at t*=" + detail::fmt(report.t_star) + "; byte-identical reports: " +
                (byte_identical ? "yes" : "no")};
}

// 15. Resonator sup bound at 1000 random heights.
inline CheckResult check_resonator_sup() {
    const PrimeTable primes = sieve_primes(1000);
    const ResonatorTable table = build_resonator({ResonatorMode::LineOne, 1000.0}, primes);
    const double sup = resonator_sup(table);
    std::mt19937_64 rng(0x5eed2026ULL);
    std::uniform_real_distribution<double> dist(0.0, 1e6);
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
        const double t = dist(rng);
        worst_excess = std::max(worst_excess, log_resonator_abs(table, t) - sup);
    }
    const double t0_gap = std::abs(log_resonator_abs(table, 0.0) - sup);
    const bool pass = worst_excess <= 1e-9 && t0_gap <= 1e-9;
    return {pass, worst_excess, 1e-9,
            "max(log|R(t)| - sup) over 1000 random t; equality gap at t=0: " +
                detail::fmt(t0_gap)};
}

// Suite-only checks (no acceptance criterion number).

inline CheckResult check_mertens_trend() {
    const PrimeTable primes = sieve_primes(1000000);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double final_dev = 0.0;
    std::ostringstream detail_ss;
    for (double X : {1e3, 1e4, 1e5, 1e6}) {
        const double dev = std::abs(mertens_ratio(X, primes).ratio - 1.0);
        if (dev > prev) monotone = false;
        prev = dev;
        final_dev = dev;
        detail_ss << "X=" << detail::fmt(X) << ": " << detail::fmt(dev) << " ";
    }
    const bool pass = monotone && final_dev <= 0.05;
    return {pass, final_dev, 0.05, "|ratio-1| sequence: " + detail_ss.str()};
}

inline CheckResult check_p1_normalization() {
    const PrimeTable primes = sieve_primes(1000000);
    const MertensResult m = mertens_ratio(1e6, primes);
    double worst = 0.0;
    for (int ell : {1, 2, 3}) {
        worst = std::max(worst, std::abs(std::pow(m.ratio, ell) - 1.0));
    }
    return {worst <= 0.05, worst, 0.05, "max |P1/(e^gamma log X)^ell - 1| at X=1e6"};
}

inline CheckResult check_strip_positivity() {
    const PrimeTable primes = sieve_primes(16);
    const ResonatorSpec spec{ResonatorMode::Strip, 16.0, 0.75, 0.0, 0.0};
    const ResonatorTable table = build_resonator(spec, primes);
    const double T = 1e3;
    const KernelSpec kernel = kernel_for_height(T);
    const MomentEstimate i1 =
        moment_quadrature(table, T, kernel, std::nullopt, MomentObjective::one());
    const MomentEstimate i2 =
        moment_quadrature(table, T, kernel, std::nullopt,
                          MomentObjective::prime_sum(1, spec.sigma, spec.X), {}, &primes);
    const double bound = ratio_lower_bound_strip(spec, 1, primes);
    const double margin = i2.value.real() / (bound * i1.value.real());
    return {margin >= 0.95, margin, 0.95,
            "I2/(bound*I1) for the strip prime-sum objective, X=16, sigma=0.75"};
}

inline CheckResult check_diagonal_closed_form() {
    const PrimeTable primes = sieve_primes(8);
    const ResonatorTable table = build_resonator({ResonatorMode::LineOne, 6.0}, primes);
    const std::uint64_t n_max = choose_double_sum_n_max(table);
    const auto smooth = enumerate_smooth(table, n_max);
    double partial = 0.0;
    for (const auto& s : smooth) partial += s.r * s.r;
    const double total = resonator_l2_mass(table);
    const double rel = (total - partial) / partial;
    return {rel >= 0.0 && rel <= kDoubleSumTailTol, rel, kDoubleSumTailTol,
            "closed-form vs enumerated l2 mass tail ratio, X=6"};
}

inline CheckResult check_truncated_product_example() {
    const PrimeTable primes = sieve_primes(16);
    const double expected = (4.0 / 3.0) * (9.0 / 8.0) * (25.0 / 24.0) * (49.0 / 48.0);
    const double got = zeta_truncated({2.0, 0.0}, 10.0, primes).real();
    const double rel = std::abs(got - expected) / expected;
    return {rel <= 1e-12, rel, 1e-12, "zeta(2; 10) four-factor product"};
}

inline const std::vector<Check>& all_checks() {
    static const std::vector<Check> checks = {
        {1, "dual-zeta-evaluators", "oracles", check_dual_zeta, 10.0},
        {2, "forced-zeta-constants", "identities", check_forced_constants, 0.0},
        {3, "truncated-product-trend", "trends", check_truncation_trend, 60.0},
        {4, "mertens-product-1e6", "trends", check_mertens_value, 10.0},
        {5, "c-sigma-dual-route", "identities", check_c_sigma, 0.0},
        {6, "s-constant-forms", "identities", check_s_constant, 0.0},
        {7, "hockey-stick-identity", "identities", check_hockey_stick, 0.0},
        {8, "moment-oracle-equivalence", "oracles", check_moment_oracle, 120.0},
        {9, "positivity-discard-chain", "oracles", check_positivity_chain, 300.0},
        {10, "ratio-decomposition-identity", "identities", check_decomposition, 0.0},
        {11, "p2-trend", "trends", check_p2_trend, 0.0},
        {12, "kappa-max-values", "identities", check_kappa_max, 0.0},
        {13, "theorem-bound-values", "identities", check_theorem_values, 0.0},
        {14, "search-replay-determinism", "oracles", check_search_replay, 120.0},
        {15, "resonator-sup-bound", "oracles", check_resonator_sup, 0.0},
        {0, "mertens-ratio-trend", "trends", check_mertens_trend, 0.0},
        {0, "p1-normalization-trend", "trends", check_p1_normalization, 0.0},
        {0, "strip-positivity-chain", "oracles", check_strip_positivity, 0.0},
        {0, "diagonal-closed-form", "oracles", check_diagonal_closed_form, 0.0},
        {0, "truncated-product-example", "identities", check_truncated_product_example, 0.0},
    };
    return checks;
}

}  // namespace zres::verify
