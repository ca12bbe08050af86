#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "zres/primes.hpp"
#include "zres/report_json.hpp"
#include "zres/search.hpp"
#include "zres/zeta.hpp"

using namespace zres;

TEST_CASE("grid arithmetic: two-point window") {
    SearchConfig cfg;
    cfg.T = 200.0;
    cfg.beta = std::log(100.0) / std::log(200.0);  // window [100, 200]
    cfg.sigma = 2.0;
    cfg.ell = 1;
    cfg.X = 0.0;
    cfg.grid_step = 100.0;
    cfg.top_k = 8;
    const PrimeTable primes = sieve_primes(8);
    const auto candidates = grid_scan(cfg, primes);
    REQUIRE(candidates.size() == 2);
    std::vector<double> ts = {candidates[0].t, candidates[1].t};
    std::sort(ts.begin(), ts.end());
    CHECK(ts[0] == Catch::Approx(100.0).margin(1e-9));
    CHECK(ts[1] == Catch::Approx(200.0).margin(1e-9));
}

TEST_CASE("unguided scores equal the zeta modulus one-by-one") {
    SearchConfig cfg;
    cfg.T = 110.0;
    cfg.beta = std::log(100.0) / std::log(110.0);  // window [100, 110]
    cfg.sigma = 2.0;
    cfg.ell = 1;
    cfg.X = 0.0;
    cfg.grid_step = 1.0;
    cfg.top_k = 16;
    const PrimeTable primes = sieve_primes(8);
    const auto candidates = grid_scan(cfg, primes);
    REQUIRE(candidates.size() == 11);
    for (const Candidate& c : candidates) {
        CHECK(c.score == Catch::Approx(std::abs(zeta({2.0, c.t}))).epsilon(1e-12));
    }
    // Descending by score.
    for (std::size_t i = 0; i + 1 < candidates.size(); ++i) {
        CHECK(candidates[i].score >= candidates[i + 1].score);
    }
}

TEST_CASE("golden section on a synthetic concave objective") {
    auto f = [](double t) { return -(t - 3.3) * (t - 3.3); };
    const RefineResult res = golden_section_maximize(f, 3.0, 4.0, 1e-8);
    CHECK(res.t_star == Catch::Approx(3.3).margin(1e-6));
    CHECK(res.iterations > 10);
}

TEST_CASE("local_refine validation") {
    CHECK_THROWS_AS(local_refine(1.0, 1, 50.0, 1e-7, 1e-6), domain_error);
    CHECK_THROWS_AS(local_refine(1.0, 1, 50.0, 0.1, 0.0), domain_error);
}

TEST_CASE("local_refine propagates a pole hit") {
    // t0 = 0 at sigma = 1 puts the pole itself in the evaluation set.
    CHECK_THROWS_AS(local_refine(1.0, 1, 0.0, 0.5, 1e-3), domain_error);
}

TEST_CASE("local_refine against a brute-force scan") {
    // Coarse argmax of |zeta(1+it)| on [20, 21].
    double t0 = 0.0, best = -1.0;
    for (double t = 20.0; t <= 21.0; t += 1e-3) {
        const double v = joint_harmonic_product(1.0, t, 1);
        if (v > best) {
            best = v;
            t0 = t;
        }
    }
    const double w = 0.02;
    double brute_t = t0, brute_v = -1.0;
    for (double t = t0 - w; t <= t0 + w; t += 1e-5) {
        const double v = joint_harmonic_product(1.0, t, 1);
        if (v > brute_v) {
            brute_v = v;
            brute_t = t;
        }
    }
    const RefineResult res = local_refine(1.0, 1, t0, w, 1e-6);
    CHECK(std::abs(res.t_star - brute_t) <= 1e-5);
    CHECK(res.value >= brute_v * (1.0 - 1e-9));
}

TEST_CASE("refinement never decreases the objective") {
    for (double t0 : {30.0, 33.3, 41.7}) {
        const double at_t0 = joint_harmonic_product(1.0, t0, 1);
        const RefineResult res = local_refine(1.0, 1, t0, 0.5, 1e-4);
        CHECK(res.value >= at_t0 * (1.0 - 1e-12));
    }
}

TEST_CASE("run_search at sigma = 2 stays within the Euler-product bounds") {
    SearchConfig cfg;
    cfg.T = 100.0;
    cfg.beta = 0.5;
    cfg.sigma = 2.0;
    cfg.ell = 1;
    cfg.X = 0.0;
    cfg.grid_step = 0.01;
    const ExtremeValueReport report = run_search(cfg);
    const double z2 = kPi * kPi / 6.0;
    CHECK(report.value <= z2 + 0.01);
    CHECK(report.value >= 1.0 / z2 - 0.01);
    CHECK(report.t_star >= 10.0 - 1e-9);
    CHECK(report.t_star <= 100.0 + 1e-9);
    CHECK(std::isfinite(report.ratio));
    CHECK(report.prediction.asymptotic_only);
    CHECK(report.value ==
          Catch::Approx(joint_harmonic_product(2.0, report.t_star, 1)).epsilon(1e-12));
}

TEST_CASE("guided search: report invariants") {
    SearchConfig cfg;
    cfg.T = 2000.0;
    cfg.beta = 0.5;
    cfg.sigma = 1.0;
    cfg.ell = 1;
    cfg.X = 20.0;
    cfg.grid_step = 0.05;
    const ExtremeValueReport report = run_search(cfg);

    const PrimeTable primes = sieve_primes(32);
    const ResonatorTable guide = build_resonator({ResonatorMode::LineOne, 20.0}, primes);
    CHECK(report.guidance_score <= resonator_sup(guide) + 1e-9);
    CHECK(report.guidance_score ==
          Catch::Approx(log_resonator_abs(guide, report.t_star)).margin(1e-12));
    CHECK(report.t_star >= cfg.window_lo() - 1e-9);
    CHECK(report.t_star <= cfg.window_hi() + 1e-9);
    CHECK(report.grid_points_evaluated > 0);

    // Grid-refinement dominance over the scanned candidates.
    for (const CandidateEval& c : report.candidates) {
        CHECK(report.value >= c.joint_product * (1.0 - 1e-12));
    }
}

TEST_CASE("guided search beats the unguided median on a small window") {
    // Unguided scan over [1000, 1100], step 0.5.
    SearchConfig unguided;
    unguided.T = 1100.0;
    unguided.beta = std::log(1000.0) / std::log(1100.0);
    unguided.sigma = 1.0;
    unguided.ell = 1;
    unguided.X = 0.0;
    unguided.grid_step = 0.5;
    unguided.top_k = 201;
    const PrimeTable primes = sieve_primes(64);
    auto all = grid_scan(unguided, primes);
    REQUIRE(all.size() == 201);
    std::vector<double> joints;
    for (const Candidate& c : all) joints.push_back(c.score);
    std::nth_element(joints.begin(), joints.begin() + 100, joints.end());
    const double median = joints[100];

    SearchConfig guided = unguided;
    guided.X = 50.0;
    guided.top_k = 1;
    const auto top = grid_scan(guided, primes);
    REQUIRE(top.size() == 1);
    const double guided_joint = joint_harmonic_product(1.0, top[0].t, 1);
    CHECK(guided_joint >= median);
}

TEST_CASE("strip search predicts through the theorem-2 evaluator") {
    SearchConfig cfg;
    cfg.T = 500.0;
    cfg.beta = 0.5;
    cfg.sigma = 0.75;
    cfg.ell = 1;
    cfg.X = 20.0;
    cfg.grid_step = 0.1;
    const ExtremeValueReport report = run_search(cfg);
    CHECK(report.prediction.which == TheoremBound::Which::Thm2);
    CHECK(report.prediction.kappa ==
          Catch::Approx(0.9 * kappa_max(0.75, 0.5, false)).epsilon(1e-12));
    CHECK(report.prediction.value == std::exp(report.prediction.exponent));
    CHECK(std::isfinite(report.ratio));
}

TEST_CASE("identical configs give identical reports") {
    SearchConfig cfg;
    cfg.T = 500.0;
    cfg.beta = 0.5;
    cfg.sigma = 1.0;
    cfg.ell = 2;
    cfg.X = 30.0;
    cfg.grid_step = 0.05;
    const std::string a = to_json(run_search(cfg)).dump();
    const std::string b = to_json(run_search(cfg)).dump();
    CHECK(a == b);
}

TEST_CASE("threaded scan matches single-threaded") {
    SearchConfig cfg;
    cfg.T = 3000.0;
    cfg.beta = 0.5;
    cfg.sigma = 1.0;
    cfg.ell = 1;
    cfg.X = 30.0;
    cfg.grid_step = 0.01;
    cfg.top_k = 8;
    const PrimeTable primes = sieve_primes(64);
    const auto seq = grid_scan(cfg, primes);
    SearchConfig par = cfg;
    par.threads = 4;
    const auto thr = grid_scan(par, primes);
    REQUIRE(seq.size() == thr.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].t == thr[i].t);
        CHECK(seq[i].score == thr[i].score);
    }
}

TEST_CASE("search config validation") {
    SearchConfig cfg;
    cfg.T = 0.5;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.beta = 1.0;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.sigma = 0.5;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.grid_step = 1e9;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.refine_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
}
