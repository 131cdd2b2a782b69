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

#include <cstdint>

namespace chaincoord {

class ChainView;
struct Hash256;

// How a chain reaches agreement on history. Probabilistic chains adopt the
// heaviest branch and may reorganize; instant chains append decided blocks
// that are final the moment they exist.
enum class FinalityMode : uint8_t { Probabilistic, Instant };

struct FinalityPolicy {
    uint32_t confirmations = 12;
    double block_time = 14.0; // seconds
};

// Twelve confirmations at fourteen-second blocks, the usual public-network
// waiting rule (about three minutes).
inline constexpr FinalityPolicy kDefaultPolicy{12, 14.0};

// Deeper rule derived from double-spend analyses of public networks.
inline constexpr FinalityPolicy kDeepConfirmationPolicy{37, 14.0};

// Probability that an attacker controlling fraction q of block production
// ever overtakes a block buried under z confirmations.
//
// With p = 1 - q and lambda = z * q / p:
//
//   P(q, z) = 1 - sum_{k=0}^{z} (lambda^k e^-lambda / k!) * (1 - (q/p)^(z-k))
//
// The attacker's head start while the honest chain mines z blocks is Poisson
// with mean lambda; catching up from a deficit of d behaves as a biased
// random walk absorbed at parity, which succeeds with probability (q/p)^d.
// Returns 1.0 for q >= 0.5 (the walk is no longer biased against the
// attacker). Throws DomainError unless 0 <= q < 1.
double catchup_probability(double q, uint32_t z);

// Smallest z with catchup_probability(q, z) <= target_risk.
// Requires 0 <= q < 0.5 and 0 < target_risk < 1.
uint32_t required_confirmations(double q, double target_risk);

// Wall-clock wait implied by a confirmation policy: z * block_time seconds.
double finality_time(const FinalityPolicy& policy);

struct MonteCarloResult {
    double probability = 0.0;
    uint64_t successes = 0;
    uint64_t trials = 0;
    double standard_error = 0.0;
};

// Simulates the same race the closed form integrates: a Poisson(z*q/p) head
// start, then a unit random walk (attacker step with probability q) absorbed
// at deficit <= 0 (success) or deficit >= max_deficit (give up).
//
// Truncation undercounts by at most (q/p)^max_deficit per trial; the default
// of 140 keeps that below 1e-12 for q <= 0.45. Trials are split over a fixed
// number of partitions with per-partition seeds and merged in partition
// order, so results are identical for a given seed regardless of how many
// threads execute the partitions.
MonteCarloResult monte_carlo_reversion(double q, uint32_t z, uint64_t trials, uint64_t seed,
                                       uint32_t max_deficit = 140);

// Whether `block` can be acted on under `policy`. Probabilistic mode requires
// confirmations(chain, block) >= policy.confirmations and throws NotCanonical
// for blocks off the canonical chain; instant mode is true iff canonical.
bool is_final(const ChainView& chain, const Hash256& block, const FinalityPolicy& policy,
              FinalityMode mode);

} // namespace chaincoord
