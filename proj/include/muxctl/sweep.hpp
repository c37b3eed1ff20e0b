// Copyright 2026 The muxctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace muxctl {

/// Worker count resolution: explicit request > MUXCTL_WORKERS > hardware.
inline int resolve_worker_count(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MUXCTL_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) on `workers` threads. Tasks are pure and
/// write results by index, so the output is independent of scheduling.
/// The first exception thrown by any task is rethrown on the caller.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    workers = resolve_worker_count(workers);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto body = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int w = 0; w < nt; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

/// Inclusive linear grid with n points from lo to hi.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

/// 1D or 2D grid of one scalar observable with axis metadata.
struct SweepResult {
    std::string axis1_name;
    std::vector<double> axis1;
    std::string axis2_name;          // empty for 1D sweeps
    std::vector<double> axis2;
    std::string value_name;
    std::vector<double> values;      // row-major [i1 * axis2.size() + i2], or [i1]
    std::vector<bool> flagged;       // optional per-point flags (e.g. label ambiguity)

    bool is_2d() const { return !axis2.empty(); }

    double at(std::size_t i1, std::size_t i2 = 0) const {
        return is_2d() ? values[i1 * axis2.size() + i2] : values[i1];
    }
};

/// Shortest round-trip-exact decimal form of a double. Stable across reruns,
/// which is what makes emitted CSV files golden-testable.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    double parsed = 0.0;
    std::sscanf(buf, "%lg", &parsed);
    if (parsed == x) {
        for (int prec = 1; prec < 17; ++prec) {
            char b2[40];
            std::snprintf(b2, sizeof b2, "%.*g", prec, x);
            std::sscanf(b2, "%lg", &parsed);
            if (parsed == x) return b2;
        }
    }
    return buf;
}

}  // namespace muxctl
