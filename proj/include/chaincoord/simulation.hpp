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
#include <optional>
#include <string>
#include <vector>

#include "chaincoord/clients.hpp"
#include "chaincoord/crosschain.hpp"
#include "chaincoord/report.hpp"
#include "chaincoord/scenario.hpp"
#include "chaincoord/world.hpp"

namespace chaincoord {

// One wired scenario: chains, sidechain runtimes, setup drivers, pin clients,
// crosschain coordinator, and adversaries, all registered in a fixed order so
// identical (config, seed) pairs replay identically.
class Simulation {
  public:
    explicit Simulation(ScenarioConfig config,
                        std::optional<uint64_t> seed_override = std::nullopt);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    // Advances the world to the configured duration.
    void run();
    // Snapshot of the ledger-derived metrics; retires due sidechains first.
    RunReport report();

    World& world() { return world_; }
    const ScenarioConfig& config() const { return config_; }
    CrosschainCoordinator& coordinator() { return *coordinator_; }
    SidechainRuntime* runtime(const std::string& sidechain_name);
    PinClient* pin_client(const std::string& sidechain_name);
    SetupDriver* root_setup(const std::string& sidechain_name);

  private:
    struct SidechainActors {
        SidechainConfig config;
        Hash256 id{};
        std::vector<AccountId> members;
        SidechainRuntime* runtime = nullptr;
        PinClient* pins = nullptr;
        SetupDriver* root_setup = nullptr;
        SetupDriver* target_setup = nullptr; // membership on the intermediate
        int64_t stop_at = -1;                // last pin instant; -1 = run end
    };
    struct IntermediateActors {
        IntermediateConfig config;
        Hash256 chain_id{};
        std::vector<AccountId> members;
        PinClient* pins = nullptr;
        SetupDriver* setup = nullptr;
    };
    struct AdversaryActors {
        AdversaryConfig config;
        PrivateMinerAdversary* miner = nullptr;
        SpamClient* spammer = nullptr;
        ReorgInjector* injector = nullptr;
    };

    void build();
    std::vector<PinStackLevel> stack_for(const SidechainActors& actors);
    void try_archive(SidechainActors& actors);

    ScenarioConfig config_;
    uint64_t seed_;
    World world_;
    AccountId operator_{};
    AccountId xtx_account_{};
    std::map<AccountId, std::string> roles_;
    std::vector<SidechainActors> sidechains_;
    std::vector<IntermediateActors> intermediates_;
    std::vector<AdversaryActors> adversaries_;
    CrosschainCoordinator* coordinator_ = nullptr;
};

RunReport run_scenario(const ScenarioConfig& config,
                       std::optional<uint64_t> seed_override = std::nullopt);

// Aggregates one run of a config holding both strategies side by side.
// MissingVariant unless at least one direct and one hierarchical sidechain.
StrategyComparison compare_strategies(const ScenarioConfig& config);

} // namespace chaincoord
