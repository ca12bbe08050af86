#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliOutcome {
    int code = 0;
    std::string out;
    std::string err;
};

CliOutcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = zres::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("zres_test_" + name);
}

}  // namespace

TEST_CASE("constants subcommand emits the expected fields") {
    const auto r = run_cli({"constants", "--sigma", "0.75", "--ell", "2", "--beta", "0.5"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["S"].get<double>() == Catch::Approx(5.571429).margin(1e-5));
    CHECK(j["c_sigma"].get<double>() == Catch::Approx(0.45150).margin(1e-4));
    CHECK(j["kappa_max_uncond"].get<double>() == Catch::Approx(0.16702).margin(1e-4));
    CHECK(j["kappa_max_rh"].get<double>() == Catch::Approx(0.45930).margin(1e-4));
    CHECK(j["gamma"].get<double>() == Catch::Approx(0.5772156649).margin(1e-9));
    // Effective parameters echoed.
    CHECK(j["sigma"].get<double>() == 0.75);
    CHECK(j["ell"].get<int>() == 2);
    CHECK(j["beta"].get<double>() == 0.5);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"constants", "--sigma", "1.5"}).code == 2);
    CHECK(run_cli({"constants"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"constants", "--sigma", "0.75", "--bogus", "1"}).code == 2);
    CHECK(run_cli({}).code == 2);
}

TEST_CASE("domain errors exit with code 3") {
    const auto r = run_cli({"bound", "--thm", "1", "--T", "15", "--ell", "1"});
    CHECK(r.code == 3);
    CHECK(r.err.find("domain error") != std::string::npos);
    CHECK(run_cli({"primes", "--limit", "200000000"}).code == 3);
}

TEST_CASE("help exits 0") {
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("primes --count-only") {
    const auto r = run_cli({"primes", "--limit", "10", "--count-only"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["limit"].get<std::uint64_t>() == 10);
    CHECK(j["count"].get<std::size_t>() == 4);
    CHECK(!j.contains("primes"));
    const json full = json::parse(run_cli({"primes", "--limit", "10"}).out);
    CHECK(full["primes"] == json::array({2, 3, 5, 7}));
}

TEST_CASE("zeta subcommand methods") {
    const json em = json::parse(run_cli({"zeta", "--sigma", "2", "--t", "0"}).out);
    CHECK(em["abs"].get<double>() == Catch::Approx(1.6449340668).margin(1e-9));
    CHECK(em["method"] == "euler-maclaurin");

    const json tr =
        json::parse(run_cli({"zeta", "--sigma", "2", "--t", "0", "--trunc", "10"}).out);
    CHECK(tr["method"] == "euler-product-truncated");
    CHECK(tr["re"].get<double>() == Catch::Approx(1.59505208333).margin(1e-9));

    const json joint =
        json::parse(run_cli({"zeta", "--sigma", "2", "--t", "0", "--ell", "2"}).out);
    CHECK(joint["method"] == "joint-harmonic-product");
    CHECK(joint["abs"].get<double>() == Catch::Approx(2.7058081).margin(1e-6));

    CHECK(run_cli({"zeta", "--sigma", "1", "--t", "0"}).code == 3);
}

TEST_CASE("resonator dump CSV") {
    const fs::path csv = temp_file("coeffs.csv");
    const auto r = run_cli({"resonator", "--mode", "line", "--X", "10", "--dump", csv.string()});
    REQUIRE(r.code == 0);
    std::ifstream f(csv);
    REQUIRE(f.good());
    std::string header, line2;
    std::getline(f, header);
    std::getline(f, line2);
    CHECK(header == "prime,r");
    CHECK(line2.substr(0, 2) == "2,");
    CHECK(std::stod(line2.substr(2)) == Catch::Approx(0.8).epsilon(1e-15));
    const json j = json::parse(r.out);
    CHECK(j["count"].get<int>() == 4);
    fs::remove(csv);
}

TEST_CASE("moments subcommand echoes parameters and value") {
    const json j = json::parse(
        run_cli({"moments", "--X", "6", "--T", "1000", "--objective", "one", "--method", "sum"})
            .out);
    CHECK(j["estimate"]["method"] == "double-sum");
    CHECK(j["estimate"]["re"].get<double>() > 0.0);
    CHECK(j["estimate"]["truncation_n_max"].get<std::uint64_t>() > 0);
    const json q = json::parse(
        run_cli({"moments", "--X", "6", "--T", "1000", "--objective", "one", "--method", "quad"})
            .out);
    CHECK(q["estimate"]["re"].get<double>() ==
          Catch::Approx(j["estimate"]["re"].get<double>()).epsilon(0.01));
    CHECK(q["estimate"]["window"]["hi"].get<double>() > 0.0);
    CHECK(q["estimate"]["tail_bound"].get<double>() >= 0.0);
}

TEST_CASE("bound subcommand") {
    const json b1 = json::parse(run_cli({"bound", "--thm", "1", "--T", "1e6", "--ell", "2"}).out);
    CHECK(b1["which"] == "thm1");
    CHECK(b1["value"].get<double>() == Catch::Approx(37.96).margin(0.05));
    CHECK(b1["value"].get<double>() ==
          Catch::Approx(b1["main_term"].get<double>() + b1["secondary_term"].get<double>())
              .epsilon(1e-15));
    CHECK(b1["asymptotic_only"].get<bool>());

    const json b2 = json::parse(run_cli({"bound", "--thm", "2", "--T", "1e6", "--ell", "1",
                                         "--sigma", "0.75", "--beta", "0.5", "--kappa", "0.167"})
                                    .out);
    CHECK(b2["which"] == "thm2");
    CHECK(b2["exponent"].get<double>() == Catch::Approx(1.793).margin(0.005));
    CHECK(b2["value"].get<double>() ==
          Catch::Approx(std::exp(b2["exponent"].get<double>())).epsilon(1e-15));

    const json b3 = json::parse(run_cli({"bound", "--thm", "3", "--T", "1e6", "--ell", "1",
                                         "--sigma", "0.75", "--beta", "0.5"})
                                    .out);
    CHECK(b3["which"] == "thm3");
    CHECK(b3["kappa"].get<double>() == Catch::Approx(0.9 * 0.45930).margin(1e-3));
}

TEST_CASE("search subcommand: determinism, report shape, scan CSV") {
    const fs::path csv = temp_file("scan.csv");
    const std::vector<std::string> args = {"search", "--T",   "500", "--beta", "0.5",
                                           "--sigma", "1",    "--ell", "1",   "--X",
                                           "20",      "--step", "0.5", "--scan-csv", csv.string()};
    const auto r1 = run_cli(args);
    REQUIRE(r1.code == 0);
    const auto r2 = run_cli(args);
    CHECK(r1.out == r2.out);  // byte-identical JSON

    const json j = json::parse(r1.out);
    CHECK(j["t_star"].get<double>() >= std::sqrt(500.0) - 1e-9);
    CHECK(j["t_star"].get<double>() <= 500.0 + 1e-9);
    CHECK(j["config"]["grid_step"].get<double>() == 0.5);
    CHECK(j["prediction"]["asymptotic_only"].get<bool>());
    CHECK(std::isfinite(j["ratio"].get<double>()));

    std::ifstream f(csv);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "t,guidance_score,joint_product");
    std::size_t rows = 0, with_joint = 0;
    for (std::string line; std::getline(f, line);) {
        ++rows;
        const auto second_comma = line.find(',', line.find(',') + 1);
        if (line.substr(second_comma + 1) != "nan") ++with_joint;
    }
    CHECK(rows == static_cast<std::size_t>(j["grid_points_evaluated"].get<std::int64_t>()));
    CHECK(with_joint == j["candidates"].size());
    fs::remove(csv);
}

TEST_CASE("JSON reports re-parse and re-validate invariants") {
    const json rep = json::parse(
        run_cli({"search", "--T", "300", "--beta", "0.5", "--X", "10", "--step", "1"}).out);
    // value re-evaluated at report time matches.
    const double sigma = rep["config"]["sigma"].get<double>();
    const int ell = rep["config"]["ell"].get<int>();
    const double v = zres::joint_harmonic_product(sigma, rep["t_star"].get<double>(), ell);
    CHECK(rep["value"].get<double>() == Catch::Approx(v).epsilon(1e-12));
    CHECK(rep["ratio"].get<double>() ==
          Catch::Approx(rep["value"].get<double>() / rep["prediction"]["value"].get<double>())
              .epsilon(1e-12));
}

TEST_CASE("config file supplies defaults, flags win") {
    const fs::path cfg = temp_file("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"sigma": 0.75, "ell": 2, "beta": 0.5})";
    }
    const json from_cfg =
        json::parse(run_cli({"constants", "--config", cfg.string()}).out);
    CHECK(from_cfg["ell"].get<int>() == 2);
    CHECK(from_cfg["S"].get<double>() == Catch::Approx(5.571429).margin(1e-5));

    const json overridden =
        json::parse(run_cli({"constants", "--config", cfg.string(), "--ell", "3"}).out);
    CHECK(overridden["ell"].get<int>() == 3);
    CHECK(overridden["S"].get<double>() ==
          Catch::Approx(12.0 - 6.0 + 4.0 / 1.75 - 1.0 / 2.5).margin(1e-9));
    fs::remove(cfg);
}

TEST_CASE("--out writes the JSON to a file") {
    const fs::path out = temp_file("out.json");
    const auto r = run_cli({"constants", "--sigma", "0.6", "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    REQUIRE(f.good());
    const json j = json::parse(f);
    CHECK(j["sigma"].get<double>() == 0.6);
    fs::remove(out);
}

TEST_CASE("verify suite emits JSON lines and respects suite filters") {
    const auto r = run_cli({"verify", "--suite", "identities"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        const json j = json::parse(line);
        CHECK(j["status"] == "pass");
        CHECK(j.contains("name"));
        CHECK(j.contains("measured"));
        CHECK(j.contains("tolerance"));
        ++lines;
    }
    CHECK(lines >= 5);
}

TEST_CASE("verify --out writes the JSON lines to a file") {
    const fs::path out = temp_file("verify.jsonl");
    const auto r = run_cli({"verify", "--suite", "identities", "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    REQUIRE(f.good());
    std::size_t lines = 0;
    for (std::string line; std::getline(f, line);) {
        json::parse(line);
        ++lines;
    }
    CHECK(lines >= 5);
    fs::remove(out);
}

TEST_CASE("suite-only oracle checks pass") {
    for (const auto& check : zres::verify::all_checks()) {
        if (check.criterion != 0) continue;
        const auto result = check.run();
        INFO(check.name << ": " << result.detail);
        CHECK(result.pass);
    }
}
