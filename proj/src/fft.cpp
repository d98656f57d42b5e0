// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace chirpjrc::fft {

namespace {

// FFTW planning is not thread-safe; execution on a shared plan with new
// arrays is. Plans are cached for the process lifetime.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cdouble> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::span<cdouble> data, int sign) {
    if (data.empty()) return;
    fftw_plan p = cache().get(static_cast<int>(data.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(std::span<cdouble> data) { run(data, FFTW_FORWARD); }
void inverse(std::span<cdouble> data) { run(data, FFTW_BACKWARD); }

}  // namespace chirpjrc::fft
