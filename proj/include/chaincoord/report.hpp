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
#include <string>
#include <vector>

namespace chaincoord {

struct ChainStats {
    std::string name;
    std::string finality; // probabilistic | instant
    uint64_t blocks = 0;
    uint64_t transactions = 0;
    double mean_utilization = 0.0; // reserved gas over limit, non-empty span
    double final_gas_price_wei = 0.0;
    uint64_t reorg_events = 0;
    uint64_t reverted_blocks = 0;
    uint64_t finalized_reverted = 0;
};

struct PinStats {
    std::string sidechain;
    std::string strategy;
    std::string pin_target;
    uint64_t scheduled = 0;
    uint64_t submitted = 0;
    uint64_t accepted = 0;
    uint64_t finalized = 0;
    uint64_t resubmissions = 0;
    uint64_t rejected = 0;
    double mean_inclusion_delay_s = -1.0;
    double mean_finality_delay_s = -1.0;
    double max_finality_delay_s = -1.0;
    uint64_t root_pin_txs = 0;  // this sidechain's share of root-chain pins
    double root_pin_gas = 0.0;  // gas those pins used on the root chain
    uint64_t observation_duty = 0;
    std::string exposure; // public | private
    bool archived = false;
};

struct ReadinessRow {
    std::string sidechain;
    std::string chain;
    bool keyset = false;
    bool ready = false;
    double readiness_delay_s = -1.0; // activation inclusion to finality
};

struct XtxReport {
    std::string label;
    std::string outcome; // committed | ignored | error:<reason>
    uint64_t legs = 0;
    uint64_t legs_applied = 0;
    bool mixed = false;
    double duration_s = -1.0;
};

struct SpendRow {
    std::string account; // role label
    double gas = 0.0;
    double usd = 0.0;
};

struct AdversaryReport {
    std::string kind;
    double q = 0.0;
    uint64_t trials = 0;
    uint64_t reversions = 0;
    double empirical_rate = 0.0;
    double analytic_rate = 0.0;
    double three_sigma_bound = 0.0; // analytic + 3 standard errors
    bool within_bound = true;
    double rate = 0.0; // spammer tx/s
    uint64_t submitted = 0;
    uint64_t included = 0;
    uint64_t injected = 0; // forced reorgs
};

struct RunReport {
    uint64_t seed = 0;
    int64_t duration = 0;
    double gas_price_gwei = 0.0;
    double eth_usd = 0.0;
    std::vector<ChainStats> chains;
    std::vector<PinStats> pins;
    std::vector<ReadinessRow> readiness;
    std::vector<XtxReport> crosschain;
    uint64_t xtx_committed = 0;
    uint64_t xtx_ignored = 0;
    uint64_t xtx_mixed = 0;
    uint64_t xtx_errors = 0;
    std::vector<SpendRow> spend;
    std::vector<AdversaryReport> adversaries;
};

std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
std::string to_table(const RunReport& report);

// Side-by-side aggregation over one run holding both pin strategies.

struct StrategyAggregate {
    std::string strategy;
    uint64_t sidechains = 0;
    uint64_t root_pin_txs = 0;
    double root_txs_per_day = 0.0;
    double root_gas_per_year = 0.0;
    double usd_per_year = 0.0;
    double mean_finality_delay_s = 0.0;
    uint64_t observation_duty = 0;
    std::string exposure;
};

struct StrategyComparison {
    StrategyAggregate direct;
    StrategyAggregate hierarchical;
};

std::string to_json(const StrategyComparison& comparison);
std::string to_csv(const StrategyComparison& comparison);
std::string to_table(const StrategyComparison& comparison);

} // namespace chaincoord
