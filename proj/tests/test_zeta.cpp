#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "zres/constants.hpp"
#include "zres/primes.hpp"
#include "zres/zeta.hpp"

using namespace zres;

TEST_CASE("zeta at forced real points") {
    CHECK(zeta({2.0, 0.0}).real() == Catch::Approx(kPi * kPi / 6.0).margin(1e-13));
    CHECK(std::abs(zeta({2.0, 0.0}).imag()) < 1e-15);
    CHECK(zeta({4.0, 0.0}).real() == Catch::Approx(std::pow(kPi, 4) / 90.0).margin(1e-13));
}

TEST_CASE("alternating oracle at forced points") {
    CHECK(zeta_alternating_oracle({2.0, 0.0}).real() ==
          Catch::Approx(kPi * kPi / 6.0).margin(1e-13));
    // eta(2) = pi^2/12 cross-check through the conversion factor.
    CHECK(zeta_alternating_oracle({4.0, 0.0}).real() ==
          Catch::Approx(std::pow(kPi, 4) / 90.0).margin(1e-13));
}

TEST_CASE("dual evaluators agree on a spot grid") {
    for (double sigma : {0.6, 1.0, 2.0}) {
        for (double t : {0.0, 1.0, 10.0, 1000.0}) {
            if (sigma == 1.0 && t == 0.0) continue;
            const Complex a = zeta({sigma, t});
            const Complex b = zeta_alternating_oracle({sigma, t});
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("dual evaluators agree at s = 0.75 + 100i") {
    const Complex a = zeta({0.75, 100.0});
    const Complex b = zeta_alternating_oracle({0.75, 100.0});
    CHECK(std::abs(a - b) <= 1e-10);
}

TEST_CASE("zeta(1/2) against the dual-evaluator cross-check") {
    const Complex a = zeta({0.5, 0.0});
    const Complex b = zeta_alternating_oracle({0.5, 0.0});
    CHECK(std::abs(a - b) <= 1e-10);
    CHECK(a.real() == Catch::Approx(-1.46035).margin(1e-4));
}

TEST_CASE("conjugate symmetry") {
    for (double sigma : {0.6, 1.5}) {
        for (double t : {3.0, 77.7}) {
            const Complex up = zeta({sigma, t});
            const Complex down = zeta({sigma, -t});
            CHECK(std::abs(up - std::conj(down)) <= 1e-12 * std::max(1.0, std::abs(up)));
        }
    }
}

TEST_CASE("zeta domain errors") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(zeta({0.0, 5.0}), domain_error);
    CHECK_THROWS_AS(zeta({-1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(zeta({2.0, 2e7}), domain_error);
    CHECK_THROWS_AS(zeta_alternating_oracle({1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(zeta_alternating_oracle({0.5, 2e6}), domain_error);
}

TEST_CASE("EvalConfig validation") {
    EvalConfig cfg;
    cfg.target_abs_error = 1e-15;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, cfg), domain_error);
    cfg = {};
    cfg.em_bernoulli_order = 13;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, cfg), domain_error);
    cfg = {};
    cfg.em_terms = 0;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, cfg), domain_error);
}

TEST_CASE("truncated Euler product: four-factor example") {
    const PrimeTable primes = sieve_primes(16);
    const double expected = (4.0 / 3.0) * (9.0 / 8.0) * (25.0 / 24.0) * (49.0 / 48.0);
    const Complex z = zeta_truncated({2.0, 0.0}, 10.0, primes);
    CHECK(z.real() == Catch::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(z.imag()) < 1e-15);
}

TEST_CASE("truncated Euler product: identity and error cases") {
    const PrimeTable primes = sieve_primes(16);
    CHECK(zeta_truncated({2.0, 0.0}, 1.0, primes) == Complex{1.0, 0.0});
    CHECK_THROWS_AS(zeta_truncated({2.0, 0.0}, 0.5, primes), domain_error);
    CHECK_THROWS_AS(zeta_truncated({2.0, 0.0}, 100.0, primes), domain_error);
    CHECK_THROWS_AS(zeta_truncated({0.0, 1.0}, 10.0, primes), domain_error);
}

TEST_CASE("truncated product error decreases in Y at t = 1e4") {
    const PrimeTable primes = sieve_primes(100000);
    const Complex z = zeta({1.0, 1e4});
    double prev = std::numeric_limits<double>::infinity();
    for (double Y : {1e2, 1e3, 1e4, 1e5}) {
        const double rel = std::abs(zeta_truncated({1.0, 1e4}, Y, primes) - z) / std::abs(z);
        CHECK(rel <= prev);
        prev = rel;
    }
    CHECK(prev <= 5e-2);
}

TEST_CASE("prime-power log sum basics") {
    const PrimeTable primes = sieve_primes(200);
    CHECK(log_zeta_prime_sum({2.0, 0.0}, 2.0, primes) == Complex{0.25, 0.0});
    CHECK(log_zeta_prime_sum({2.0, 0.0}, 1.9, primes) == Complex{0.0, 0.0});
    CHECK_THROWS_AS(log_zeta_prime_sum({0.5, 0.0}, 10.0, primes), domain_error);
    // Direct arithmetic for y = 9: primes 2, 3, 5, 7 and powers 4, 8, 9.
    const double expected = 1.0 / 4.0 + 1.0 / 9.0 + 1.0 / 25.0 + 1.0 / 49.0 +
                            0.5 / 16.0 + (1.0 / 3.0) / 64.0 + 0.5 / 81.0;
    CHECK(log_zeta_prime_sum({2.0, 0.0}, 9.0, primes).real() ==
          Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("prime-power log sum tracks log zeta") {
    const PrimeTable primes = sieve_primes(100000);
    const ComplexPoint s{0.9, 50.0};
    const Complex z = zeta(s);
    const Complex approx = std::exp(log_zeta_prime_sum(s, 1e5, primes));
    CHECK(std::abs(approx - z) / std::abs(z) <= 1e-2);
}

TEST_CASE("exp of the prime-power sum approaches the truncated product") {
    const PrimeTable primes = sieve_primes(10000);
    const ComplexPoint s{0.8, 30.0};
    double prev = std::numeric_limits<double>::infinity();
    for (double y : {1e2, 1e3, 1e4}) {
        const Complex a = std::exp(log_zeta_prime_sum(s, y, primes));
        const Complex b = zeta_truncated(s, y, primes);
        const double gap = std::abs(a - b);
        CHECK(gap <= prev);
        prev = gap;
    }
    CHECK(prev <= 0.05);
}

TEST_CASE("joint harmonic product reductions") {
    CHECK(joint_harmonic_product(2.0, 0.0, 2) ==
          Catch::Approx(std::pow(kPi, 4) / 36.0).epsilon(1e-12));
    CHECK(joint_harmonic_product(1.5, 42.0, 1) ==
          Catch::Approx(std::abs(zeta({1.5, 42.0}))).epsilon(1e-14));
    CHECK_THROWS_AS(joint_harmonic_product(1.0, 0.0, 1), domain_error);
    CHECK_THROWS_AS(joint_harmonic_product(1.0, 5.0, 0), domain_error);
}

TEST_CASE("joint harmonic product equals the factor-by-factor evaluation") {
    const double sigma = 1.0, t = 100.0;
    double expected = 1.0;
    for (int j = 1; j <= 3; ++j) {
        expected *= std::abs(zeta({sigma, static_cast<double>(j) * t}));
    }
    CHECK(joint_harmonic_product(sigma, t, 3) == Catch::Approx(expected).epsilon(1e-12));
}
