#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zres/constants.hpp"
#include "zres/errors.hpp"
#include "zres/primes.hpp"
#include "zres/resonator.hpp"
#include "zres/util.hpp"
#include "zres/zeta.hpp"

namespace zres {

// Gaussian kernel Phi(y) = exp(-y^2/2) evaluated at y = a*t; the Fourier
// transform sqrt(2*pi)*Phi is positive, which is what the moment bounds use.
struct KernelSpec {
    double a = 1.0;
};

inline KernelSpec kernel_for_height(double T) {
    if (!(T > 1.0)) throw domain_error("kernel_for_height: T must be > 1");
    return {std::log(T) / T};
}

enum class MomentMethod { Quadrature, DoubleSum, DiagonalClosedForm };

inline const char* to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::Quadrature: return "quadrature";
        case MomentMethod::DoubleSum: return "double-sum";
        case MomentMethod::DiagonalClosedForm: return "diagonal-closed-form";
    }
    return "?";
}

// Weight multiplying |R(t)|^2 Phi(a t) in the integrand.
struct MomentObjective {
    enum class Kind {
        One,               // plain second moment of the resonator
        JointZetaProduct,  // prod_j zeta(sigma + i j t; Y), complex
        HarmonicPrimeSum,  // Re sum_j sum_{p<=Y} p^{-sigma - i j t}, real
    };
    Kind kind = Kind::One;
    int ell = 1;
    double sigma = 1.0;
    double trunc_Y = 0.0;

    static MomentObjective one() { return {}; }
    static MomentObjective joint_zeta(int ell, double sigma, double Y) {
        return {Kind::JointZetaProduct, ell, sigma, Y};
    }
    static MomentObjective prime_sum(int ell, double sigma, double Y) {
        return {Kind::HarmonicPrimeSum, ell, sigma, Y};
    }
};

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

struct QuadratureGrid {
    double step = 0.0;         // 0 = auto: min(0.05, pi/(4 log X))
    double tail_sigmas = 8.0;  // full-line truncation at this many Gaussian sigmas
    unsigned threads = 1;
};

struct MomentEstimate {
    Complex value{0.0, 0.0};
    MomentMethod method = MomentMethod::Quadrature;
    std::optional<Window> window;       // range actually sampled
    std::int64_t grid_points = 0;       // samples (Quadrature) or terms (DoubleSum)
    std::uint64_t truncation_n_max = 0; // DoubleSum only
    double step = 0.0;
    double tail_bound = 0.0;            // discarded-tail bound, full-line Quadrature only
};

inline constexpr double kDoubleSumTailTol = 1e-6;

namespace detail {

// Phase-speed bound for the trapezoid step: the resonator factors oscillate
// no faster than log X in t.
inline double max_quadrature_step(double X) {
    double bound = 0.05;
    if (X >= 2.0) bound = std::min(bound, kPi / (4.0 * std::log(X)));
    return bound;
}

struct ObjectivePrimes {
    std::vector<double> inv_pow_sigma;  // p^{-sigma}
    std::vector<double> log_p;
};

inline ObjectivePrimes collect_objective_primes(const MomentObjective& obj,
                                                const PrimeTable* primes) {
    ObjectivePrimes out;
    if (obj.kind == MomentObjective::Kind::One) return out;
    if (obj.ell < 1) throw domain_error("moment objective: ell must be >= 1");
    if (!(obj.sigma > 0.0)) throw domain_error("moment objective: sigma must be > 0");
    if (primes == nullptr) {
        throw domain_error("moment objective: a prime table covering Y is required");
    }
    if (static_cast<double>(primes->limit) < obj.trunc_Y) {
        throw domain_error("moment objective: prime table limit " + std::to_string(primes->limit) +
                           " is below Y = " + std::to_string(obj.trunc_Y));
    }
    for (std::uint64_t p : primes->primes) {
        const double pd = static_cast<double>(p);
        if (pd > obj.trunc_Y) break;
        out.inv_pow_sigma.push_back(std::pow(pd, -obj.sigma));
        out.log_p.push_back(std::log(pd));
    }
    return out;
}

inline Complex objective_at(const MomentObjective& obj, const ObjectivePrimes& op, double t) {
    switch (obj.kind) {
        case MomentObjective::Kind::One:
            return {1.0, 0.0};
        case MomentObjective::Kind::JointZetaProduct: {
            Complex log_prod{0.0, 0.0};
            for (int j = 1; j <= obj.ell; ++j) {
                const double jt = static_cast<double>(j) * t;
                for (std::size_t i = 0; i < op.log_p.size(); ++i) {
                    log_prod -= std::log(1.0 - std::polar(op.inv_pow_sigma[i], -jt * op.log_p[i]));
                }
            }
            return std::exp(log_prod);
        }
        case MomentObjective::Kind::HarmonicPrimeSum: {
            double acc = 0.0;
            for (int j = 1; j <= obj.ell; ++j) {
                const double jt = static_cast<double>(j) * t;
                for (std::size_t i = 0; i < op.log_p.size(); ++i) {
                    acc += op.inv_pow_sigma[i] * std::cos(jt * op.log_p[i]);
                }
            }
            return {acc, 0.0};
        }
    }
    return {0.0, 0.0};
}

// sup_t |objective(t)|, for the discarded-tail report.
inline double objective_sup(const MomentObjective& obj, const ObjectivePrimes& op) {
    switch (obj.kind) {
        case MomentObjective::Kind::One:
            return 1.0;
        case MomentObjective::Kind::JointZetaProduct: {
            double log_sup = 0.0;
            for (double q : op.inv_pow_sigma) log_sup -= std::log1p(-q);
            return std::exp(static_cast<double>(obj.ell) * log_sup);
        }
        case MomentObjective::Kind::HarmonicPrimeSum: {
            double s = 0.0;
            for (double q : op.inv_pow_sigma) s += q;
            return static_cast<double>(obj.ell) * s;
        }
    }
    return 0.0;
}

inline double gaussian_upper_tail(double s) {
    // int_s^inf exp(-u^2/2) du
    return std::sqrt(kPi / 2.0) * std::erfc(s / std::sqrt(2.0));
}

inline double resonator_sq_at(const ResonatorTable& table, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double r = table.r[i];
        acc += std::log(1.0 - 2.0 * r * std::cos(t * table.log_p[i]) + r * r);
    }
    return std::exp(-acc);
}

}  // namespace detail

// Trapezoidal quadrature of objective(t) * |R(t)|^2 * Phi(a t) over the given
// window, or over the symmetric range [-tail_sigmas/a, tail_sigmas/a] when no
// window is given (with the discarded Gaussian tail bounded and reported).
inline MomentEstimate moment_quadrature(const ResonatorTable& table, double T,
                                        const KernelSpec& kernel,
                                        std::optional<Window> window,
                                        const MomentObjective& objective,
                                        const QuadratureGrid& grid = {},
                                        const PrimeTable* objective_primes = nullptr) {
    if (!(T >= 10.0)) throw domain_error("moment_quadrature: T must be >= 10");
    if (!(kernel.a > 0.0)) throw domain_error("moment_quadrature: kernel scale must be > 0");

    const double step_bound = detail::max_quadrature_step(table.spec.X);
    double h = grid.step > 0.0 ? grid.step : step_bound;
    if (h > step_bound) {
        throw domain_error("moment_quadrature: step " + std::to_string(h) +
                           " exceeds the resolution bound min(0.05, pi/(4 log X)) = " +
                           std::to_string(step_bound));
    }

    double lo, hi;
    double tail_bound = 0.0;
    const auto op = detail::collect_objective_primes(objective, objective_primes);
    if (window.has_value()) {
        lo = window->lo;
        hi = window->hi;
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
            throw domain_error("moment_quadrature: window [lo, hi] must be finite with lo < hi");
        }
    } else {
        hi = grid.tail_sigmas / kernel.a;
        lo = -hi;
        tail_bound = std::exp(2.0 * resonator_sup(table)) * detail::objective_sup(objective, op) *
                     (2.0 / kernel.a) * detail::gaussian_upper_tail(grid.tail_sigmas);
    }

    const auto n = static_cast<std::int64_t>(std::ceil((hi - lo) / h - 1e-9));
    h = (hi - lo) / static_cast<double>(n);

    constexpr std::int64_t kChunk = 1 << 16;
    const auto n_chunks = static_cast<std::size_t>((n + 1 + kChunk - 1) / kChunk);
    std::vector<Complex> partial(n_chunks, Complex{0.0, 0.0});
    for_each_chunk(n_chunks, grid.threads, [&](std::size_t c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
        const std::int64_t end = std::min<std::int64_t>(begin + kChunk, n + 1);
        Complex acc{0.0, 0.0};
        for (std::int64_t i = begin; i < end; ++i) {
            const double t = lo + static_cast<double>(i) * h;
            const double y = kernel.a * t;
            double f = std::exp(-0.5 * y * y) * detail::resonator_sq_at(table, t);
            if (i == 0 || i == n) f *= 0.5;
            acc += f * detail::objective_at(objective, op, t);
        }
        partial[c] = acc;
    });
    Complex total{0.0, 0.0};
    for (const Complex& p : partial) total += p;

    MomentEstimate est;
    est.value = h * total;
    est.method = MomentMethod::Quadrature;
    est.window = Window{lo, hi};
    est.grid_points = n + 1;
    est.step = h;
    est.tail_bound = tail_bound;
    return est;
}

// X-smooth integers n <= n_max with their resonator values, ascending,
// generated by recursive prime-power expansion (r vanishes off smooth n).
struct SmoothNumber {
    std::uint64_t n;
    double log_n;
    double r;
};

inline std::vector<SmoothNumber> enumerate_smooth(const ResonatorTable& table,
                                                  std::uint64_t n_max) {
    if (n_max < 1) throw domain_error("enumerate_smooth: n_max must be >= 1");
    std::vector<SmoothNumber> out;
    std::vector<std::pair<std::uint64_t, double>> active;  // primes with r > 0
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.r[i] > 0.0) active.emplace_back(table.primes[i], table.r[i]);
    }
    struct Frame {
        std::uint64_t n;
        double r;
        std::size_t idx;
    };
    std::vector<Frame> stack{{1, 1.0, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.idx == active.size()) {
            out.push_back({f.n, std::log(static_cast<double>(f.n)), f.r});
            continue;
        }
        const auto [p, rp] = active[f.idx];
        std::uint64_t n = f.n;
        double r = f.r;
        for (;;) {
            stack.push_back({n, r, f.idx + 1});
            if (n > n_max / p) break;
            n *= p;
            r *= rp;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SmoothNumber& a, const SmoothNumber& b) { return a.n < b.n; });
    return out;
}

// Grows n_max geometrically until the neglected tail sum_{n>n_max} r(n)^2
// falls below tol times the retained mass (checked against the closed form).
inline std::uint64_t choose_double_sum_n_max(const ResonatorTable& table,
                                             double tol = kDoubleSumTailTol) {
    const double total = resonator_l2_mass(table);
    for (std::uint64_t n_max = 1u << 16;; n_max *= 8) {
        const auto smooth = enumerate_smooth(table, n_max);
        double partial = 0.0;
        for (const auto& s : smooth) partial += s.r * s.r;
        if (total - partial <= tol * partial) return n_max;
        if (n_max > (std::uint64_t{1} << 50)) {
            throw domain_error("choose_double_sum_n_max: tail tolerance unreachable below 2^50");
        }
    }
}

// Fourier-side oracle for the full-line second moment:
//   (sqrt(2 pi)/a) * sum_{m,n <= n_max} r(m) r(n) exp(-(log(m/n))^2/(2 a^2)).
inline MomentEstimate moment_double_sum_oracle(const ResonatorTable& table, double T,
                                               const KernelSpec& kernel,
                                               std::uint64_t n_max) {
    if (!(T >= 10.0)) throw domain_error("moment_double_sum_oracle: T must be >= 10");
    const auto smooth = enumerate_smooth(table, n_max);
    double partial = 0.0;
    for (const auto& s : smooth) partial += s.r * s.r;
    const double total = resonator_l2_mass(table);
    const double tail_ratio = (total - partial) / partial;
    if (tail_ratio > kDoubleSumTailTol) {
        throw domain_error("moment_double_sum_oracle: neglected tail ratio " +
                           std::to_string(tail_ratio) + " exceeds " +
                           std::to_string(kDoubleSumTailTol) +
                           "; raise n_max (see choose_double_sum_n_max)");
    }

    const double a = kernel.a;
    // exp underflows past ~|dlog| = a*sqrt(2*745); widen a little for slack.
    const double window = 40.0 * a;
    CompensatedSum acc;
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        acc.add(smooth[i].r * smooth[i].r);
        for (std::size_t j = i + 1; j < smooth.size(); ++j) {
            const double dl = smooth[j].log_n - smooth[i].log_n;
            if (dl >= window) break;
            acc.add(2.0 * smooth[i].r * smooth[j].r * std::exp(-dl * dl / (2.0 * a * a)));
        }
    }

    MomentEstimate est;
    est.value = Complex{kSqrtTwoPi / a * acc.value(), 0.0};
    est.method = MomentMethod::DoubleSum;
    est.grid_points = static_cast<std::int64_t>(smooth.size());
    est.truncation_n_max = n_max;
    return est;
}

// Diagonal-only closed form (sqrt(2 pi)/a) * prod_p 1/(1 - r(p)^2).
inline MomentEstimate moment_diagonal_closed_form(const ResonatorTable& table,
                                                  const KernelSpec& kernel) {
    MomentEstimate est;
    est.value = Complex{kSqrtTwoPi / kernel.a * resonator_l2_mass(table), 0.0};
    est.method = MomentMethod::DiagonalClosedForm;
    return est;
}

}  // namespace zres
