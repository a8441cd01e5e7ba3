// Shared small utilities: error taxonomy, compensated summation, a minimal
// thread pool for embarrassingly parallel index loops, and deterministic
// floating point formatting for report output.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tcent {

// Error taxonomy. The CLI maps these onto its exit codes:
// validation failures -> 2, capacity guards -> 3, configuration -> 4.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Neumaier compensated accumulator. Group sums mix magnitudes across ~15
// orders (exp(-2 lambda E) weights), and results must be independent of
// summation order to 1e-12; plain accumulation is not.
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Runs fn(i) for i in [0, n) on `threads` workers. Each index is handled
// exactly once; fn must be safe to call concurrently for distinct indices.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = 1;
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned nw = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

inline unsigned default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Fixed-width %.17g rendering; round-trips doubles and keeps CSV output
// byte-identical across runs.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace tcent
