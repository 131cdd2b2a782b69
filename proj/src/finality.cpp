// Copyright 2026-present the chaincoord authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chaincoord/finality.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include "chaincoord/errors.hpp"
#include "chaincoord/rng.hpp"

namespace chaincoord {

double catchup_probability(double q, uint32_t z) {
    if (!(q >= 0.0) || q >= 1.0) fail(Errc::DomainError, "q must lie in [0, 1)");
    if (q >= 0.5) return 1.0;
    if (q == 0.0) return z == 0 ? 1.0 : 0.0;

    const double p = 1.0 - q;
    const double ratio = q / p;
    const double lambda = static_cast<double>(z) * ratio;

    // Accumulate Poisson terms iteratively; r_pow walks (q/p)^(z-k) down from
    // (q/p)^z so no term needs a pow() call in the loop.
    double poisson_term = std::exp(-lambda);
    double r_pow = std::pow(ratio, static_cast<double>(z));
    double covered = 0.0;
    for (uint32_t k = 0; k <= z; ++k) {
        if (k > 0) poisson_term *= lambda / static_cast<double>(k);
        covered += poisson_term * (1.0 - r_pow);
        r_pow /= ratio;
    }
    return std::clamp(1.0 - covered, 0.0, 1.0);
}

uint32_t required_confirmations(double q, double target_risk) {
    if (!(q >= 0.0) || q >= 0.5) fail(Errc::DomainError, "q must lie in [0, 0.5)");
    if (!(target_risk > 0.0) || target_risk >= 1.0)
        fail(Errc::DomainError, "target_risk must lie in (0, 1)");
    constexpr uint32_t kScanLimit = 20'000;
    for (uint32_t z = 0; z <= kScanLimit; ++z) {
        if (catchup_probability(q, z) <= target_risk) return z;
    }
    fail(Errc::DomainError, "no confirmation depth reaches target risk");
}

double finality_time(const FinalityPolicy& policy) {
    if (policy.block_time <= 0.0) fail(Errc::DomainError, "block_time must be positive");
    return static_cast<double>(policy.confirmations) * policy.block_time;
}

namespace {

uint64_t run_partition(double q, uint32_t z, uint64_t trials, uint64_t seed,
                       uint32_t max_deficit) {
    Rng rng(seed);
    const double p = 1.0 - q;
    const double lambda = static_cast<double>(z) * q / p;
    uint64_t successes = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        const uint64_t head_start = rng.poisson(lambda);
        int64_t deficit = static_cast<int64_t>(z) - static_cast<int64_t>(head_start);
        while (deficit > 0 && deficit < static_cast<int64_t>(max_deficit)) {
            deficit += rng.bernoulli(q) ? -1 : 1;
        }
        if (deficit <= 0) ++successes;
    }
    return successes;
}

} // namespace

MonteCarloResult monte_carlo_reversion(double q, uint32_t z, uint64_t trials, uint64_t seed,
                                       uint32_t max_deficit) {
    if (!(q >= 0.0) || q >= 1.0) fail(Errc::DomainError, "q must lie in [0, 1)");
    if (trials == 0) fail(Errc::DomainError, "trials must be positive");
    if (max_deficit < 20) fail(Errc::DomainError, "max_deficit must be at least 20");

    // Partition count is fixed so the merged result never depends on how many
    // threads happen to run; each partition owns a derived seed.
    const uint64_t partitions = trials >= 64 ? 64 : 1;
    const uint64_t base = trials / partitions;
    const uint64_t excess = trials % partitions;

    std::vector<uint64_t> counts(partitions, 0);
    const uint64_t worker_cap = std::max(1u, std::thread::hardware_concurrency());
    if (partitions > 1 && worker_cap > 1 && trials >= 200'000) {
        std::vector<std::future<uint64_t>> futures;
        futures.reserve(partitions);
        for (uint64_t i = 0; i < partitions; ++i) {
            const uint64_t n = base + (i < excess ? 1 : 0);
            futures.push_back(std::async(std::launch::async, run_partition, q, z, n,
                                         Rng::derive_seed(seed, i), max_deficit));
        }
        for (uint64_t i = 0; i < partitions; ++i) counts[i] = futures[i].get();
    } else {
        for (uint64_t i = 0; i < partitions; ++i) {
            const uint64_t n = base + (i < excess ? 1 : 0);
            counts[i] = run_partition(q, z, n, Rng::derive_seed(seed, i), max_deficit);
        }
    }

    MonteCarloResult result;
    result.trials = trials;
    for (uint64_t c : counts) result.successes += c;
    result.probability = static_cast<double>(result.successes) / static_cast<double>(trials);
    result.standard_error =
        std::sqrt(result.probability * (1.0 - result.probability) / static_cast<double>(trials));
    return result;
}

} // namespace chaincoord
