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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chaincoord/crosschain.hpp"
#include "chaincoord/gas.hpp"

namespace chaincoord {

// Scenario files are flat, line-oriented `key = value` under repeated
// `[section]` headers. `#` starts a comment. Repeating a section header
// starts a new entry for list-valued sections (sidechain, intermediate,
// adversary, crosschain); scalar sections (coordination, prices, run) may
// appear once each.

struct CoordinationConfig {
    std::string name = "root";
    GasSchedule schedule{};
    uint64_t confirmations = 12;
    bool stochastic_blocks = false;
    double price_sensitivity = 0.05;
    double price_target = 0.5;
};

struct PriceConfig {
    double gas_price_gwei = 5.95;
    double eth_usd = 150.0;
};

struct IntermediateConfig {
    std::string name;
    double block_time = 2.0;
    int64_t pin_interval = 3600;
    size_t validators = 3;
};

enum class PinStrategy { Direct, Hierarchical };

std::string_view pin_strategy_name(PinStrategy strategy);

struct SidechainConfig {
    std::string name;
    size_t participants = 3;
    PinStrategy strategy = PinStrategy::Direct;
    std::string pin_target; // intermediate name; hierarchical only
    int64_t pin_interval = 3600;
    int64_t heartbeat = 600;
    int64_t lifetime = 0; // seconds until archive; 0 = whole run
};

enum class AdversaryKind { PrivateMiner, Spammer, ReorgInjector };

struct AdversaryConfig {
    AdversaryKind kind = AdversaryKind::PrivateMiner;
    double q = 0.1;           // private miner
    uint64_t give_up = 16;    // private miner
    double rate = 20.0;       // spammer, tx/s
    uint64_t tx_gas = 64'972; // spammer
    int64_t start = 0;        // spammer
    int64_t stop = -1;        // spammer; -1 = run end
    std::vector<std::pair<int64_t, uint64_t>> reorgs; // injector (at, depth)
};

struct CrosschainSpec {
    std::string label; // tx_id = hash_of_string(label)
    std::vector<std::string> legs;
    uint64_t timeout_blocks = 20;
    int64_t submit_at = 0;
    std::map<std::string, LegFault> faults; // leg name -> fault
};

struct ScenarioConfig {
    CoordinationConfig coordination;
    PriceConfig prices;
    uint64_t seed = 42;
    int64_t duration = 3600;
    bool wait_start_finality = true;
    std::vector<IntermediateConfig> intermediates;
    std::vector<SidechainConfig> sidechains;
    std::vector<AdversaryConfig> adversaries;
    std::vector<CrosschainSpec> crosschain;
};

// Parses without validating; ParseError carries line number and field name.
ScenarioConfig parse_scenario(std::string_view text);

// ValidationError lists every violation, not just the first.
void validate_scenario(const ScenarioConfig& config);

// parse + validate. ParseError when the file is missing or malformed.
ScenarioConfig load_scenario(const std::string& path);

} // namespace chaincoord
