#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zres/bounds.hpp"
#include "zres/errors.hpp"
#include "zres/primes.hpp"
#include "zres/resonator.hpp"
#include "zres/util.hpp"
#include "zres/zeta.hpp"

namespace zres {

struct SearchConfig {
    double T = 1e4;
    double beta = 0.5;       // window [T^beta, T]
    double sigma = 1.0;
    int ell = 1;
    double X = 50.0;         // resonator guidance cutoff; 0 disables guidance
    double grid_step = 0.0;  // 0 = auto
    int top_k = 16;
    double refine_tol = 1e-6;
    std::uint64_t seed = 0;  // reserved for randomized sub-sampling; echoed in reports
    unsigned threads = 1;
    EvalConfig eval;

    double window_lo() const { return std::pow(T, beta); }
    double window_hi() const { return T; }

    // Nyquist-style default: the joint product's log-derivative is bounded by
    // ell * sum p^{-sigma} log p over the effective primes.
    double effective_step() const {
        if (grid_step > 0.0) return grid_step;
        return std::min(0.01, 1.0 / (2.0 * static_cast<double>(ell) * std::log(1e3)));
    }

    void validate() const {
        if (!(T > 1.0)) throw domain_error("search: T must be > 1");
        if (!(beta > 0.0 && beta < 1.0)) throw domain_error("search: beta must be in (0, 1)");
        if (!(sigma > 0.5)) throw domain_error("search: sigma must exceed 1/2");
        if (ell < 1) throw domain_error("search: ell must be a positive integer");
        if (!(X >= 0.0) || !std::isfinite(X)) throw domain_error("search: X must be finite and >= 0");
        if (top_k < 1) throw domain_error("search: top_k must be >= 1");
        if (!(refine_tol > 0.0)) throw domain_error("search: refine_tol must be > 0");
        if (!(window_lo() < window_hi())) {
            throw domain_error("search: empty window [T^beta, T]");
        }
        if (grid_step > 0.0 &&
            grid_step > (window_hi() - window_lo()) * (1.0 + 1e-12) + 1e-12) {
            throw domain_error("search: grid_step exceeds the window length");
        }
    }
};

struct Candidate {
    double t = 0.0;
    double score = 0.0;  // log|R(t)| when guided, joint product when unguided
};

namespace detail {

// Keep the k best (score desc, ties toward smaller t).
inline void merge_candidate(std::vector<Candidate>& top, std::size_t k, const Candidate& c) {
    auto pos = top.begin();
    while (pos != top.end() && (pos->score > c.score || (pos->score == c.score && pos->t <= c.t))) {
        ++pos;
    }
    if (static_cast<std::size_t>(pos - top.begin()) >= k) return;
    top.insert(pos, c);
    if (top.size() > k) top.pop_back();
}

}  // namespace detail

// Scores the arithmetic grid t = T^beta + i*step over [T^beta, T] and returns
// the top_k candidates, score-descending. sink, when set, sees every grid
// point in ascending order.
inline std::vector<Candidate> grid_scan(
    const SearchConfig& cfg, const PrimeTable& primes,
    const std::function<void(double, double)>& sink = nullptr) {
    cfg.validate();
    const double lo = cfg.window_lo();
    const double hi = cfg.window_hi();
    const double h = cfg.effective_step();
    const auto n_points = static_cast<std::int64_t>(std::floor((hi - lo) / h + 1e-9)) + 1;

    std::optional<ResonatorTable> guide;
    if (cfg.X > 0.0) {
        guide = build_resonator({ResonatorMode::LineOne, cfg.X, 0.75, 0.0, cfg.beta}, primes);
    }
    auto score_at = [&](double t) {
        if (guide.has_value()) return log_resonator_abs(*guide, t);
        return joint_harmonic_product(cfg.sigma, t, cfg.ell, cfg.eval);
    };

    constexpr std::int64_t kChunk = 1 << 16;
    const auto n_chunks = static_cast<std::size_t>((n_points + kChunk - 1) / kChunk);
    std::vector<std::vector<Candidate>> chunk_top(n_chunks);
    const bool parallel_ok = !sink && cfg.threads > 1;
    for_each_chunk(n_chunks, parallel_ok ? cfg.threads : 1, [&](std::size_t c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
        const std::int64_t end = std::min<std::int64_t>(begin + kChunk, n_points);
        auto& top = chunk_top[c];
        for (std::int64_t i = begin; i < end; ++i) {
            const double t = std::min(lo + static_cast<double>(i) * h, hi);
            const double score = score_at(t);
            if (sink) sink(t, score);
            detail::merge_candidate(top, static_cast<std::size_t>(cfg.top_k), {t, score});
        }
    });

    std::vector<Candidate> top;
    for (const auto& chunk : chunk_top) {
        for (const Candidate& c : chunk) {
            detail::merge_candidate(top, static_cast<std::size_t>(cfg.top_k), c);
        }
    }
    return top;
}

struct RefineResult {
    double t_star = 0.0;
    double value = 0.0;  // joint product at t_star
    int iterations = 0;
};

// Golden-section maximization of f on [lo, hi]; returns the best point ever
// evaluated, so the result never falls below f at the bracket seeds.
inline RefineResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol) {
    static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    RefineResult best;
    best.t_star = lo;
    best.value = f(lo);
    auto consider = [&best](double t, double v) {
        if (v > best.value) {
            best.value = v;
            best.t_star = t;
        }
    };
    consider(hi, f(hi));

    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    consider(c, fc);
    consider(d, fd);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
        ++best.iterations;
    }
    return best;
}

// Sharpens a discrete argmax of the joint product around t0.
inline RefineResult local_refine(double sigma, int ell, double t0, double window_halfwidth,
                                 double tol, const EvalConfig& eval = {}) {
    if (!(window_halfwidth > tol && tol > 0.0)) {
        throw domain_error("local_refine: requires window_halfwidth > tol > 0");
    }
    auto objective = [&](double t) { return std::log(joint_harmonic_product(sigma, t, ell, eval)); };
    RefineResult res =
        golden_section_maximize(objective, t0 - window_halfwidth, t0 + window_halfwidth, tol);
    const double at_t0 = objective(t0);
    if (at_t0 > res.value) {
        res.t_star = t0;
        res.value = at_t0;
    }
    res.value = std::exp(res.value);
    return res;
}

struct CandidateEval {
    double t = 0.0;
    double guidance_score = 0.0;
    double joint_product = 0.0;
};

struct ExtremeValueReport {
    SearchConfig config;
    double t_star = 0.0;
    double value = 0.0;           // joint product at t_star
    double guidance_score = 0.0;  // log|R(t_star)|, 0 when unguided
    TheoremBound prediction;
    double ratio = 0.0;  // value / prediction.value; no pass/fail semantics
    std::int64_t grid_points_evaluated = 0;
    int refinement_iterations = 0;
    std::vector<CandidateEval> candidates;
};

inline ExtremeValueReport run_search(const SearchConfig& cfg,
                                     const std::function<void(double, double)>& sink = nullptr) {
    cfg.validate();
    const auto sieve_to = static_cast<std::uint64_t>(std::max(3.0, std::ceil(cfg.X)));
    const PrimeTable primes = sieve_primes(sieve_to);

    const std::vector<Candidate> scan = grid_scan(cfg, primes, sink);
    if (scan.empty()) throw domain_error("run_search: empty scan (window shorter than one step)");

    ExtremeValueReport report;
    report.config = cfg;
    const double h = cfg.effective_step();
    report.grid_points_evaluated =
        static_cast<std::int64_t>(std::floor((cfg.window_hi() - cfg.window_lo()) / h + 1e-9)) + 1;

    for (const Candidate& c : scan) {
        CandidateEval ce;
        ce.t = c.t;
        ce.guidance_score = cfg.X > 0.0 ? c.score : 0.0;
        ce.joint_product = cfg.X > 0.0
                               ? joint_harmonic_product(cfg.sigma, c.t, cfg.ell, cfg.eval)
                               : c.score;
        report.candidates.push_back(ce);
    }
    const CandidateEval* best = &report.candidates.front();
    for (const CandidateEval& ce : report.candidates) {
        if (ce.joint_product > best->joint_product ||
            (ce.joint_product == best->joint_product && ce.t < best->t)) {
            best = &ce;
        }
    }

    double t_star = best->t;
    double value = best->joint_product;
    int iterations = 0;
    if (h > cfg.refine_tol) {
        const double lo = std::max(cfg.window_lo(), best->t - h);
        const double hi = std::min(cfg.window_hi(), best->t + h);
        auto objective = [&](double t) {
            return std::log(joint_harmonic_product(cfg.sigma, t, cfg.ell, cfg.eval));
        };
        RefineResult res = golden_section_maximize(objective, lo, hi, cfg.refine_tol);
        iterations = res.iterations;
        if (std::exp(res.value) > value) {
            t_star = res.t_star;
            value = std::exp(res.value);
        }
    }

    report.t_star = t_star;
    report.value = value;
    report.refinement_iterations = iterations;
    if (cfg.X > 0.0) {
        const ResonatorTable guide =
            build_resonator({ResonatorMode::LineOne, cfg.X, 0.75, 0.0, cfg.beta}, primes);
        report.guidance_score = log_resonator_abs(guide, t_star);
    }
    if (cfg.sigma >= 1.0) {
        report.prediction = thm1_bound(cfg.T, cfg.ell);
    } else {
        const double kappa = 0.9 * kappa_max(cfg.sigma, cfg.beta, false);
        report.prediction = thm2_exponent(cfg.T, cfg.sigma, cfg.ell, cfg.beta, kappa, false);
    }
    report.ratio = report.value / report.prediction.value;
    return report;
}

}  // namespace zres
