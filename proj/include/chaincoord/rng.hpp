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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace chaincoord {

// mt19937_64 with hand-rolled variate transforms. The standard library's
// distribution objects are implementation-defined, so deriving variates from
// raw engine output directly is what keeps runs reproducible across toolchains.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). Rejection sampling keeps the draw unbiased.
    uint64_t uniform(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return draw % n;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    double exponential(double mean) { return -mean * std::log1p(-next_unit()); }

    // Knuth multiplication method, chunked so exp(-lambda) never underflows.
    uint64_t poisson(double lambda) {
        uint64_t total = 0;
        while (lambda > 30.0) {
            total += poisson_small(30.0);
            lambda -= 30.0;
        }
        return total + poisson_small(lambda);
    }

    // Derives a decorrelated child seed; used to give each simulation
    // component and Monte Carlo partition its own stream.
    static uint64_t derive_seed(uint64_t seed, uint64_t index) {
        uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

  private:
    uint64_t poisson_small(double lambda) {
        const double floor = std::exp(-lambda);
        uint64_t k = 0;
        double product = next_unit();
        while (product > floor) {
            ++k;
            product *= next_unit();
        }
        return k;
    }

    std::mt19937_64 engine_;
};

} // namespace chaincoord
