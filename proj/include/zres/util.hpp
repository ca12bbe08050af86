#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace zres {

// Neumaier-compensated accumulator for long sums.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Runs fn(chunk) for chunk = 0..n_chunks-1. Results must be combined by the
// caller in chunk order; the schedule never affects which chunk computes what,
// so any thread count yields identical output.
template <typename Fn>
void for_each_chunk(std::size_t n_chunks, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    unsigned n_workers = std::min<std::size_t>(threads, n_chunks);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace zres
