#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "zres/constants.hpp"
#include "zres/errors.hpp"
#include "zres/util.hpp"

namespace zres {

// c(sigma) = int_0^1 dt/(2 t^{-sigma} - 1) as the series sum_k 2^{-k}/(1+k*sigma).
// Valid for sigma in (0, 1]; the series converges geometrically.
inline double c_sigma_series(double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw domain_error("c_sigma: sigma must be in (0, 1], got " + std::to_string(sigma));
    }
    double sum = 0.0;
    double pow2 = 1.0;
    for (int k = 1; k < 200; ++k) {
        pow2 *= 0.5;
        const double term = pow2 / (1.0 + static_cast<double>(k) * sigma);
        sum += term;
        if (term < 1e-15) break;
    }
    return sum;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// Same integral by adaptive quadrature. The substitution t = v^{4/sigma}
// removes the derivative blow-up of the integrand at t = 0.
inline double c_sigma_quadrature(double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw domain_error("c_sigma: sigma must be in (0, 1], got " + std::to_string(sigma));
    }
    const double q = 4.0 / sigma;
    auto integrand = [q](double v) {
        const double v4 = v * v * v * v;
        return q * std::pow(v, q - 1.0) * v4 / (2.0 - v4);
    };
    return detail::integrate(integrand, 0.0, 1.0, 1e-13);
}

// Dual-route c(sigma): series and quadrature must agree; the series value is
// returned.
inline double c_sigma(double sigma) {
    const double series = c_sigma_series(sigma);
    const double quad = c_sigma_quadrature(sigma);
    if (std::abs(series - quad) > 1e-8) {
        throw consistency_error("c_sigma: series (" + std::to_string(series) +
                                ") and quadrature (" + std::to_string(quad) +
                                ") disagree beyond 1e-8");
    }
    return series;
}

// Exact binomial coefficient; n is capped so the result fits in 64 bits.
inline std::uint64_t binomial_exact(unsigned n, unsigned k) {
    if (n > 62) throw domain_error("binomial_exact: n must be <= 62 for exact 64-bit arithmetic");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (unsigned i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
    }
    return static_cast<std::uint64_t>(acc);
}

inline constexpr int kMaxSConstantEll = 60;

struct SConstantForms {
    double direct = 0.0;     // ell/(1-sigma) + sum_{m>=1} ...
    double collapsed = 0.0;  // ell/(1-sigma) - ell(ell+1)/2 + sum_{m>=2} ...
};

// Both printed forms of S(sigma, ell), each with compensated summation; the
// alternating binomial sum cancels strongly for sigma near 1/2.
inline SConstantForms s_constant_forms(double sigma, int ell) {
    if (!(sigma > 0.5 && sigma < 1.0)) {
        throw domain_error("s_constant: sigma must be in (1/2, 1), got " + std::to_string(sigma));
    }
    if (ell < 1) throw domain_error("s_constant: ell must be a positive integer");
    if (ell > kMaxSConstantEll) {
        throw domain_error("s_constant: ell > 60 would overflow exact binomials; refusing");
    }
    SConstantForms out;
    {
        CompensatedSum acc;
        acc.add(static_cast<double>(ell) / (1.0 - sigma));
        for (int m = 1; m <= ell; ++m) {
            const double binom = static_cast<double>(
                binomial_exact(static_cast<unsigned>(ell) + 1, static_cast<unsigned>(m) + 1));
            const double term = binom / (1.0 + sigma * (static_cast<double>(m) - 1.0));
            acc.add((m & 1) ? -term : term);
        }
        out.direct = acc.value();
    }
    {
        CompensatedSum acc;
        acc.add(static_cast<double>(ell) / (1.0 - sigma));
        acc.add(-0.5 * static_cast<double>(ell) * (static_cast<double>(ell) + 1.0));
        for (int m = 2; m <= ell; ++m) {
            const double binom = static_cast<double>(
                binomial_exact(static_cast<unsigned>(ell) + 1, static_cast<unsigned>(m) + 1));
            const double term = binom / (1.0 + sigma * (static_cast<double>(m) - 1.0));
            acc.add((m & 1) ? -term : term);
        }
        out.collapsed = acc.value();
    }
    return out;
}

inline double s_constant(double sigma, int ell) {
    const SConstantForms forms = s_constant_forms(sigma, ell);
    const double scale = std::max({1e-300, std::abs(forms.direct), std::abs(forms.collapsed)});
    if (std::abs(forms.direct - forms.collapsed) > 1e-12 * scale) {
        throw consistency_error("s_constant: the two printed forms disagree beyond 1e-12 relative");
    }
    if (!(forms.direct > 0.0)) {
        throw consistency_error("s_constant: computed S(sigma, ell) <= 0, contradicting "
                                "positivity of the constant");
    }
    return forms.direct;
}

// Which argument of the min() is active in the unconditional kappa bound.
enum class KappaBinding { WindowTerm, ZeroFreeTerm };

struct KappaMax {
    double value = 0.0;
    KappaBinding binding = KappaBinding::WindowTerm;
};

inline KappaMax kappa_max_detail(double sigma, double beta, bool assume_rh) {
    if (!(sigma > 0.5 && sigma < 1.0)) {
        throw domain_error("kappa_max: sigma must be in (1/2, 1), got " + std::to_string(sigma));
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw domain_error("kappa_max: beta must be in (0, 1), got " + std::to_string(beta));
    }
    const double scale = 1.0 / (sigma * (1.0 + c_sigma(sigma)));
    KappaMax out;
    if (assume_rh) {
        out.value = scale * (1.0 - beta);
        out.binding = KappaBinding::WindowTerm;
        return out;
    }
    const double window_term = 1.0 - beta;
    const double zero_free_term = (sigma - 0.5) / (1.75 - 0.5 * sigma);
    out.binding =
        window_term <= zero_free_term ? KappaBinding::WindowTerm : KappaBinding::ZeroFreeTerm;
    out.value = scale * std::min(window_term, zero_free_term);
    return out;
}

// Supremum (exclusive) of admissible kappa.
inline double kappa_max(double sigma, double beta, bool assume_rh) {
    return kappa_max_detail(sigma, beta, assume_rh).value;
}

struct TheoremBound {
    enum class Which { Thm1, Thm2, Thm3 };
    Which which = Which::Thm1;
    double T = 0.0;
    int ell = 0;
    double sigma = 0.0;  // Thm2/3 only
    double beta = 0.0;   // Thm2/3 only
    double kappa = 0.0;  // Thm2/3 only
    double main_term = 0.0;
    double secondary_term = 0.0;  // Thm1 only
    double exponent = 0.0;        // Thm2/3 only
    double value = 0.0;
    bool asymptotic_only = true;  // all O/o-terms are dropped, never estimated
};

inline const char* to_string(TheoremBound::Which w) {
    switch (w) {
        case TheoremBound::Which::Thm1: return "thm1";
        case TheoremBound::Which::Thm2: return "thm2";
        case TheoremBound::Which::Thm3: return "thm3";
    }
    return "?";
}

// e^{ell*gamma} { (log_2 T)^ell + ell (log_2 T)^{ell-1} log_3 T }, the O-term
// dropped.
inline TheoremBound thm1_bound(double T, int ell) {
    if (ell < 1) throw domain_error("thm1_bound: ell must be a positive integer");
    const double e_e = std::exp(std::exp(1.0));
    if (!(T > e_e)) {
        throw domain_error("thm1_bound: T must exceed e^e = 15.154... so that log_3 T > 0");
    }
    const double log2T = std::log(std::log(T));
    const double log3T = std::log(log2T);
    const double scale = std::exp(static_cast<double>(ell) * kEulerGamma);
    TheoremBound b;
    b.which = TheoremBound::Which::Thm1;
    b.T = T;
    b.ell = ell;
    b.main_term = scale * std::pow(log2T, static_cast<double>(ell));
    b.secondary_term =
        scale * static_cast<double>(ell) * std::pow(log2T, static_cast<double>(ell) - 1.0) * log3T;
    b.value = b.main_term + b.secondary_term;
    return b;
}

// exp{ kappa^{1-sigma} S(sigma, ell) (log T)^{1-sigma} / (log_2 T)^sigma },
// the o(1) dropped. assume_rh only widens the admissible kappa range.
inline TheoremBound thm2_exponent(double T, double sigma, int ell, double beta, double kappa,
                                  bool assume_rh = false) {
    const double e_e = std::exp(std::exp(1.0));
    if (!(T > e_e)) {
        throw domain_error("thm2_exponent: T must exceed e^e = 15.154...");
    }
    const KappaMax kmax = kappa_max_detail(sigma, beta, assume_rh);
    if (!(kappa > 0.0) || kappa >= kmax.value) {
        std::string which_binds =
            assume_rh ? "1 - beta (RH form)"
                      : (kmax.binding == KappaBinding::WindowTerm ? "1 - beta"
                                                                  : "(sigma-1/2)/(7/4-sigma/2)");
        throw domain_error("thm2_exponent: kappa = " + std::to_string(kappa) +
                           " violates 0 < kappa < " + std::to_string(kmax.value) +
                           " (binding term: " + which_binds + ")");
    }
    const double S = s_constant(sigma, ell);
    const double log2T = std::log(std::log(T));
    TheoremBound b;
    b.which = assume_rh ? TheoremBound::Which::Thm3 : TheoremBound::Which::Thm2;
    b.T = T;
    b.ell = ell;
    b.sigma = sigma;
    b.beta = beta;
    b.kappa = kappa;
    b.exponent = std::pow(kappa, 1.0 - sigma) * S * std::pow(std::log(T), 1.0 - sigma) /
                 std::pow(log2T, sigma);
    b.value = std::exp(b.exponent);
    return b;
}

}  // namespace zres
