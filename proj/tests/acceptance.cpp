// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "zres/verify.hpp"

int main() {
    int failures = 0;
    int ran = 0;
    for (const auto& check : zres::verify::all_checks()) {
        if (check.criterion == 0) continue;
        const auto start = std::chrono::steady_clock::now();
        zres::verify::CheckResult result;
        std::string error;
        try {
            result = check.run();
        } catch (const std::exception& e) {
            result.pass = false;
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool within_budget = check.runtime_budget_s <= 0.0 || secs < check.runtime_budget_s;
        const bool pass = result.pass && within_budget;
        ++ran;
        if (!pass) ++failures;
        std::printf("criterion %02d [%s] %-28s measured=%-12.6g tol=%-10.6g (%.1fs",
                    check.criterion, pass ? "PASS" : "FAIL", check.name.c_str(), result.measured,
                    result.tolerance, secs);
        if (check.runtime_budget_s > 0.0) std::printf(" / budget %.0fs", check.runtime_budget_s);
        std::printf(")\n");
        if (!pass) {
            if (!within_budget) std::printf("              runtime budget exceeded\n");
            std::printf("              %s\n",
                        error.empty() ? result.detail.c_str() : error.c_str());
        }
    }
    std::printf("%d/%d acceptance criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
