#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zres/bounds.hpp"
#include "zres/constants.hpp"
#include "zres/errors.hpp"
#include "zres/moments.hpp"
#include "zres/primes.hpp"
#include "zres/ratio_bounds.hpp"
#include "zres/report_json.hpp"
#include "zres/resonator.hpp"
#include "zres/search.hpp"
#include "zres/verify.hpp"
#include "zres/zeta.hpp"

namespace zres::cli {

// Flat JSON config file: one object whose keys mirror the subcommand's flag
// names. Values are appended to the argument list as --key=value tokens for
// every key not already given, so explicit flags win over the config file and
// the config file wins over defaults. Unknown keys are rejected by the parser.
inline std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw domain_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw domain_error("config file must hold a flat JSON object");
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& arg : args) {
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        }
        if (given) continue;
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else {
            text = value.dump();
        }
        args.push_back(flag + "=" + text);
    }
    return args;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void emit(const njson& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw domain_error("cannot open output path " + out_path);
    f << j.dump(2) << "\n";
}

inline CLI::Validator open_interval(double lo, double hi) {
    return CLI::Validator(
        [lo, hi](std::string& s) -> std::string {
            const double v = std::strtod(s.c_str(), nullptr);
            if (!(v > lo && v < hi)) {
                return "value " + s + " not in the open interval (" + std::to_string(lo) + ", " +
                       std::to_string(hi) + ")";
            }
            return {};
        },
        "FLOAT in (" + std::to_string(lo) + "," + std::to_string(hi) + ")", "OPEN_INTERVAL");
}

}  // namespace detail

struct Args {
    // shared
    unsigned threads = 1;
    std::string out_path;
    // primes
    std::uint64_t limit = 100;
    bool count_only = false;
    // zeta
    double sigma = 1.0;
    double t = 0.0;
    double trunc_Y = 0.0;
    int ell = 1;
    // resonator / moments
    std::string mode = "line";
    double X = 50.0;
    double res_sigma = 0.75;
    double T = 1e4;
    std::string objective = "one";
    std::string method = "quad";
    double Y = 0.0;
    std::vector<double> window;
    double step = 0.0;
    std::uint64_t n_max = 0;
    // constants / bound
    double beta = 0.5;
    bool rh = false;
    int thm = 1;
    double kappa = 0.0;
    // search
    double search_sigma = 1.0;
    int top_k = 16;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string scan_csv;
    // verify
    std::string suite = "all";
};

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"resonance-method machinery for joint extreme values of the Riemann zeta "
                 "function at harmonic points"};
    app.require_subcommand(1);

    Args a;
    std::string config_path;
    app.add_option("--threads", a.threads, "worker threads for grid scans and quadrature")
        ->envname("ZRES_THREADS")
        ->check(CLI::Range(1u, 256u));

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", a.out_path, "write the JSON result here instead of stdout");
        sub->add_option("--config", config_path,
                        "flat JSON config file mirroring the flag names; explicit flags win");
        return sub;
    };

    CLI::App* sc_primes = add_common(app.add_subcommand("primes", "sieve primes up to a limit"));
    sc_primes->add_option("--limit", a.limit, "sieve bound (inclusive)")->required();
    sc_primes->add_flag("--count-only", a.count_only, "emit only the prime count");

    CLI::App* sc_zeta = add_common(app.add_subcommand(
        "zeta", "evaluate zeta(sigma+it), a truncated Euler product, or a joint product"));
    sc_zeta->add_option("--sigma", a.sigma, "real part, > 0")->required();
    sc_zeta->add_option("--t", a.t, "imaginary part")->required();
    sc_zeta->add_option("--trunc", a.trunc_Y, "truncate to the Euler product over p <= Y");
    sc_zeta->add_option("--ell", a.ell, "joint product over sigma + i j t, j = 1..ell")
        ->check(CLI::Range(1, 64));

    CLI::App* sc_res = add_common(
        app.add_subcommand("resonator", "build resonator coefficients r(p), p <= X"));
    sc_res->add_option("--mode", a.mode, "line | strip")
        ->check(CLI::IsMember({"line", "strip"}));
    sc_res->add_option("--X", a.X, "prime cutoff")->required();
    sc_res->add_option("--sigma", a.res_sigma, "strip-mode exponent in (1/2, 1)");
    sc_res->add_option("--dump", a.scan_csv, "write prime,r CSV here");

    CLI::App* sc_mom = add_common(app.add_subcommand(
        "moments", "weighted moment integrals of |R(t)|^2 against the Gaussian kernel"));
    sc_mom->add_option("--X", a.X, "resonator prime cutoff")->required();
    sc_mom->add_option("--T", a.T, "height parameter; kernel scale is log(T)/T")->required();
    sc_mom->add_option("--objective", a.objective, "one | joint | primesum")
        ->check(CLI::IsMember({"one", "joint", "primesum"}));
    sc_mom->add_option("--ell", a.ell, "harmonic count for joint/primesum")->check(CLI::Range(1, 64));
    sc_mom->add_option("--sigma", a.sigma, "objective sigma (joint/primesum)");
    sc_mom->add_option("--Y", a.Y, "objective prime cutoff (default: X)");
    sc_mom->add_option("--method", a.method, "quad | sum")->check(CLI::IsMember({"quad", "sum"}));
    sc_mom->add_option("--window", a.window, "integrate over [lo, hi] instead of the full line")
        ->expected(2);
    sc_mom->add_option("--step", a.step, "trapezoid step (0 = auto)");
    sc_mom->add_option("--n-max", a.n_max, "double-sum truncation (0 = auto)");
    sc_mom->add_option("--mode", a.mode, "resonator mode: line | strip")
        ->check(CLI::IsMember({"line", "strip"}));
    sc_mom->add_option("--res-sigma", a.res_sigma, "strip resonator exponent");

    CLI::App* sc_const = add_common(
        app.add_subcommand("constants", "gamma, e^gamma, c(sigma), S(sigma,ell), kappa_max"));
    sc_const->add_option("--sigma", a.sigma, "sigma in (1/2, 1)")
        ->required()
        ->check(detail::open_interval(0.5, 1.0));
    sc_const->add_option("--ell", a.ell, "harmonic count")->check(CLI::Range(1, 60));
    sc_const->add_option("--beta", a.beta, "window exponent in (0, 1)")
        ->check(detail::open_interval(0.0, 1.0));
    sc_const->add_flag("--rh", a.rh, "echoed; both kappa_max variants are always printed");

    CLI::App* sc_bound = add_common(
        app.add_subcommand("bound", "numeric lower-bound evaluators for the three theorems"));
    sc_bound->add_option("--thm", a.thm, "theorem number: 1, 2 or 3")
        ->required()
        ->check(CLI::Range(1, 3));
    sc_bound->add_option("--T", a.T, "height")->required();
    sc_bound->add_option("--ell", a.ell, "harmonic count")->check(CLI::Range(1, 60));
    sc_bound->add_option("--sigma", a.sigma, "sigma in (1/2, 1), theorems 2-3");
    sc_bound->add_option("--beta", a.beta, "window exponent, theorems 2-3");
    sc_bound->add_option("--kappa", a.kappa, "resonator scale (0 = 0.9 * kappa_max)");

    CLI::App* sc_search = add_common(app.add_subcommand(
        "search", "resonator-guided search for large joint products over [T^beta, T]"));
    sc_search->add_option("--T", a.T, "window top")->required();
    sc_search->add_option("--beta", a.beta, "window exponent in (0, 1)")
        ->check(detail::open_interval(0.0, 1.0));
    sc_search->add_option("--sigma", a.search_sigma, "line sigma > 1/2");
    sc_search->add_option("--ell", a.ell, "harmonic count")->check(CLI::Range(1, 64));
    sc_search->add_option("--X", a.X, "guidance resonator cutoff (0 = unguided)");
    sc_search->add_option("--step", a.step, "grid step (0 = auto)");
    sc_search->add_option("--top", a.top_k, "candidates kept from the scan")
        ->check(CLI::Range(1, 4096));
    sc_search->add_option("--tol", a.tol, "refinement bracket tolerance");
    sc_search->add_option("--seed", a.seed, "echoed in the report");
    sc_search->add_option("--scan-csv", a.scan_csv, "dump the scan as t,guidance_score,joint_product");

    CLI::App* sc_verify = add_common(
        app.add_subcommand("verify", "run the oracle/identity/trend check suites"));
    sc_verify->add_option("--suite", a.suite, "oracles | identities | trends | all")
        ->check(CLI::IsMember({"oracles", "identities", "trends", "all"}));

    try {
        const std::vector<std::string> full = apply_config_file(argv);
        // CLI11 wants argv reversed, name first removed by caller.
        std::vector<std::string> rev(full.rbegin(), full.rend());
        app.parse(rev);
    } catch (const domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All) << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sc_primes->parsed()) {
            const PrimeTable table = sieve_primes(a.limit);
            njson j;
            j["limit"] = table.limit;
            j["count"] = table.count();
            if (!a.count_only) j["primes"] = table.primes;
            detail::emit(j, a.out_path, out);
            return 0;
        }

        if (sc_zeta->parsed()) {
            njson j;
            j["sigma"] = a.sigma;
            j["t"] = a.t;
            Complex v;
            if (a.trunc_Y > 0.0) {
                const PrimeTable primes =
                    sieve_primes(static_cast<std::uint64_t>(std::max(1.0, std::ceil(a.trunc_Y))));
                j["trunc"] = a.trunc_Y;
                if (a.ell == 1) {
                    v = zeta_truncated({a.sigma, a.t}, a.trunc_Y, primes);
                    j["method"] = "euler-product-truncated";
                } else {
                    Complex log_prod{0.0, 0.0};
                    for (int jj = 1; jj <= a.ell; ++jj) {
                        log_prod += std::log(
                            zeta_truncated({a.sigma, static_cast<double>(jj) * a.t}, a.trunc_Y, primes));
                    }
                    v = std::exp(log_prod);
                    j["ell"] = a.ell;
                    j["method"] = "joint-truncated-product";
                }
            } else if (a.ell == 1) {
                v = zeta({a.sigma, a.t});
                j["method"] = "euler-maclaurin";
            } else {
                const double jp = joint_harmonic_product(a.sigma, a.t, a.ell);
                v = {jp, 0.0};
                j["ell"] = a.ell;
                j["method"] = "joint-harmonic-product";
            }
            j["re"] = v.real();
            j["im"] = v.imag();
            j["abs"] = std::abs(v);
            detail::emit(j, a.out_path, out);
            return 0;
        }

        if (sc_res->parsed()) {
            const ResonatorSpec spec{
                a.mode == "line" ? ResonatorMode::LineOne : ResonatorMode::Strip, a.X, a.res_sigma,
                0.0, 0.0};
            const PrimeTable primes =
                sieve_primes(static_cast<std::uint64_t>(std::max(3.0, std::ceil(a.X))));
            const ResonatorTable table = build_resonator(spec, primes);
            if (!a.scan_csv.empty()) {
                std::ofstream f(a.scan_csv, std::ios::binary);
                if (!f) throw domain_error("cannot open dump path " + a.scan_csv);
                f << "prime,r\n";
                for (std::size_t i = 0; i < table.size(); ++i) {
                    f << table.primes[i] << "," << detail::fmt17(table.r[i]) << "\n";
                }
            }
            njson j;
            j["mode"] = a.mode;
            j["X"] = a.X;
            if (spec.mode == ResonatorMode::Strip) j["sigma"] = a.res_sigma;
            j["count"] = table.size();
            j["sup_log_abs"] = resonator_sup(table);
            j["l2_mass"] = resonator_l2_mass(table);
            if (!a.scan_csv.empty()) j["dump"] = a.scan_csv;
            detail::emit(j, a.out_path, out);
            return 0;
        }

        if (sc_mom->parsed()) {
            const ResonatorSpec spec{
                a.mode == "line" ? ResonatorMode::LineOne : ResonatorMode::Strip, a.X, a.res_sigma,
                0.0, 0.0};
            const double Y = a.Y > 0.0 ? a.Y : a.X;
            const auto sieve_to =
                static_cast<std::uint64_t>(std::max(3.0, std::ceil(std::max(a.X, Y))));
            const PrimeTable primes = sieve_primes(sieve_to);
            const ResonatorTable table = build_resonator(spec, primes);
            const KernelSpec kernel = kernel_for_height(a.T);

            MomentObjective obj = MomentObjective::one();
            if (a.objective == "joint") obj = MomentObjective::joint_zeta(a.ell, a.sigma, Y);
            if (a.objective == "primesum") obj = MomentObjective::prime_sum(a.ell, a.sigma, Y);

            MomentEstimate est;
            if (a.method == "quad") {
                std::optional<Window> window;
                if (!a.window.empty()) window = Window{a.window[0], a.window[1]};
                est = moment_quadrature(table, a.T, kernel, window, obj,
                                        {a.step, 8.0, a.threads}, &primes);
            } else {
                if (obj.kind != MomentObjective::Kind::One) {
                    throw domain_error("moments: the double-sum oracle covers objective 'one' only");
                }
                const std::uint64_t n_max =
                    a.n_max > 0 ? a.n_max : choose_double_sum_n_max(table);
                est = moment_double_sum_oracle(table, a.T, kernel, n_max);
            }
            njson j;
            j["X"] = a.X;
            j["T"] = a.T;
            j["mode"] = a.mode;
            j["objective"] = a.objective;
            if (a.objective != "one") {
                j["ell"] = a.ell;
                j["sigma"] = a.sigma;
                j["Y"] = Y;
            }
            j["method"] = a.method;
            j["threads"] = a.threads;
            j["estimate"] = to_json(est);
            detail::emit(j, a.out_path, out);
            return 0;
        }

        if (sc_const->parsed()) {
            njson j;
            j["sigma"] = a.sigma;
            j["ell"] = a.ell;
            j["beta"] = a.beta;
            j["rh"] = a.rh;
            j["gamma"] = kEulerGamma;
            j["e_gamma"] = kExpEulerGamma;
            j["c_sigma"] = c_sigma(a.sigma);
            j["S"] = s_constant(a.sigma, a.ell);
            j["kappa_max_uncond"] = kappa_max(a.sigma, a.beta, false);
            j["kappa_max_rh"] = kappa_max(a.sigma, a.beta, true);
            detail::emit(j, a.out_path, out);
            return 0;
        }

        if (sc_bound->parsed()) {
            TheoremBound b;
            if (a.thm == 1) {
                b = thm1_bound(a.T, a.ell);
            } else {
                const bool rh = a.thm == 3;
                const double kappa =
                    a.kappa > 0.0 ? a.kappa : 0.9 * kappa_max(a.sigma, a.beta, rh);
                b = thm2_exponent(a.T, a.sigma, a.ell, a.beta, kappa, rh);
            }
            detail::emit(to_json(b), a.out_path, out);
            return 0;
        }

        if (sc_search->parsed()) {
            SearchConfig cfg;
            cfg.T = a.T;
            cfg.beta = a.beta;
            cfg.sigma = a.search_sigma;
            cfg.ell = a.ell;
            cfg.X = a.X;
            cfg.grid_step = a.step;
            cfg.top_k = a.top_k;
            cfg.refine_tol = a.tol;
            cfg.seed = a.seed;
            cfg.threads = a.threads;

            std::vector<std::pair<double, double>> rows;
            std::function<void(double, double)> sink;
            if (!a.scan_csv.empty()) {
                sink = [&rows](double t, double score) { rows.emplace_back(t, score); };
            }
            const ExtremeValueReport report = run_search(cfg, sink);
            if (!a.scan_csv.empty()) {
                std::ofstream f(a.scan_csv, std::ios::binary);
                if (!f) throw domain_error("cannot open scan-csv path " + a.scan_csv);
                f << "t,guidance_score,joint_product\n";
                const double lo = cfg.window_lo(), h = cfg.effective_step();
                std::vector<double> joints(rows.size(),
                                           std::numeric_limits<double>::quiet_NaN());
                for (const CandidateEval& c : report.candidates) {
                    const auto idx = static_cast<std::size_t>(std::llround((c.t - lo) / h));
                    if (idx < joints.size()) joints[idx] = c.joint_product;
                }
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    const double guidance = cfg.X > 0.0 ? rows[i].second : 0.0;
                    const double joint = cfg.X > 0.0 ? joints[i] : rows[i].second;
                    f << detail::fmt17(rows[i].first) << "," << detail::fmt17(guidance) << ","
                      << detail::fmt17(joint) << "\n";
                }
            }
            detail::emit(to_json(report), a.out_path, out);
            return 0;
        }

        if (sc_verify->parsed()) {
            bool all_pass = true;
            std::string lines;
            for (const auto& check : zres::verify::all_checks()) {
                if (a.suite != "all" && check.suite != a.suite) continue;
                const auto result = check.run();
                all_pass = all_pass && result.pass;
                njson j;
                j["name"] = check.name;
                j["status"] = result.pass ? "pass" : "fail";
                j["measured"] = result.measured;
                j["tolerance"] = result.tolerance;
                if (check.criterion > 0) j["criterion"] = check.criterion;
                j["detail"] = result.detail;
                lines += j.dump();
                lines += "\n";
            }
            if (a.out_path.empty()) {
                out << lines;
            } else {
                std::ofstream f(a.out_path, std::ios::binary);
                if (!f) throw domain_error("cannot open output path " + a.out_path);
                f << lines;
            }
            return all_pass ? 0 : 1;
        }
    } catch (const consistency_error& e) {
        err << "internal-consistency error: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace zres::cli
