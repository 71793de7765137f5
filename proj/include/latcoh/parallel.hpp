#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "latcoh/ints.hpp"

namespace latcoh {

// Process-wide knobs set by the CLI. Thread count changes wall time only;
// every parallel sweep writes into per-index slots so results are bitwise
// independent of scheduling.
struct Config {
    static std::atomic<int>& threads() {
        static std::atomic<int> t{1};
        return t;
    }
    static std::atomic<i64>& budget_nonzeros() {
        static std::atomic<i64> b{5'000'000};
        return b;
    }
};

template <class F>
void parallel_for(std::size_t n, F&& body) {
    const int want = Config::threads().load();
    if (n == 0) return;
    if (want <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(want), n);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

} // namespace latcoh
